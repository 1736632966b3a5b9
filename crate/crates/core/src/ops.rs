/// Arithmetic operation counters for the decoder cost model.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCount {
    /// Additions, multiplications and inversions in GF(p^s).
    pub ext_field: u64,
    /// LLR combine steps and partial-sum updates in the channel decoder.
    pub channel: u64,
}

impl OpCount {
    /// Cost in F_p-equivalent operations: each GF(p^s) operation counts s².
    pub fn prime_field_equivalent(&self, s: u32) -> u64 {
        self.ext_field * (s as u64) * (s as u64) + self.channel
    }

    pub fn merge(&mut self, other: OpCount) {
        self.ext_field += other.ext_field;
        self.channel += other.channel;
    }
}
