use super::component::Component;

/// Snapshot of the whole component tree plus elapsed model time.
///
/// Two snapshots are equal iff their trees are structurally identical, with
/// reals compared bit for bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SystemState {
    pub root: Component,
    pub elapsed_ms: u64,
}

impl SystemState {
    pub fn new(root: Component) -> Self {
        Self {
            root,
            elapsed_ms: 0,
        }
    }

    pub fn quantized(&self, decimals: u32) -> Self {
        Self {
            root: self.root.quantized(decimals),
            elapsed_ms: self.elapsed_ms,
        }
    }
}
