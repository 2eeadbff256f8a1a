//! A turning airplane: a pilot console and a control system made of a main
//! controller and three surface subcontrollers running at different rates.

mod control;
mod csv;
mod machines;
mod model;
mod params;
mod physics;
mod props;


pub use control::{goal_roll_angle, horiz_wing_angle, move_angle, tail_wing_angle};
pub use csv::{write_csv, CSV_HEADER};
pub use machines::{
    main_delta, pilot_delta, sub_delta, MainController, MainOutputs, PilotConsole, SubController,
};
pub use model::{
    build_airplane, build_csystem, build_system, env_spec, status_records, system_from, BuildError,
    Scenario,
};
pub use params::{AirplaneParams, LawVersion, UnitsMode};
pub use physics::{d_beta, d_phi, d_psi, lift, norm_angle, DynamicsError};
pub use props::{propositions, reach, safe_yaw_all, stable_all};
