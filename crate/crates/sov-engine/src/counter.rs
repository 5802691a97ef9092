use num_bigint::BigUint;
use num_traits::Zero;

/// Complex multiplications and additions performed by a run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub mults: BigUint,
    pub adds: BigUint,
}

impl OpCounter {
    pub fn new() -> OpCounter {
        OpCounter::default()
    }

    pub fn add_mults(&mut self, k: u64) {
        self.mults += k;
    }

    pub fn add_adds(&mut self, k: u64) {
        self.adds += k;
    }

    pub fn merge(&mut self, other: &OpCounter) {
        self.mults += &other.mults;
        self.adds += &other.adds;
    }

    pub fn total(&self) -> BigUint {
        &self.mults + &self.adds
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_zero() && self.adds.is_zero()
    }
}
