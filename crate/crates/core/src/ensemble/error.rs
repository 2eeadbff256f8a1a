use thiserror::Error;

/// Structural errors detected while manipulating a model.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("component `{component}` has no input port `{port}`")]
    UnknownInputPort { component: String, port: String },
    #[error("no environment alternatives declared; the system cannot step")]
    NoEnvChoices,
    #[error("cannot parse connection `{0}`")]
    BadConnection(String),
}

/// Failures while executing a synchronous step.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExecError {
    #[error(
        "`{component}.{port}` holds {available} value(s) but {required} are consumed per step"
    )]
    InputUnderflow {
        component: String,
        port: String,
        available: usize,
        required: usize,
    },
    #[error("adaptor for `{component}.{port}` produced {produced} value(s), the machine runs at rate {rate}")]
    RateShape {
        component: String,
        port: String,
        produced: usize,
        rate: u32,
    },
    #[error("input `{component}.{port}` received data but has no adaptor")]
    MissingAdaptor { component: String, port: String },
    #[error("`{component}` produced {produced} output(s) for {declared} output port(s)")]
    OutputArity {
        component: String,
        produced: usize,
        declared: usize,
    },
    #[error("`{component}` produced a non-finite value")]
    NonFinite { component: String },
    #[error("connection endpoint `{0}` does not resolve")]
    Unresolved(String),
    #[error("`{component}`: {message}")]
    Machine { component: String, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}
