/// Numerical thresholds that callers may override.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute eigenvalue clustering tolerance.
    pub cluster: f64,
    /// Membership test `|a e^{-2i lambda(eta)} - 1| < membership` for the isotropy set.
    pub membership: f64,
    /// Upper edge of the near-degenerate warning band above `membership`.
    pub near_degenerate: f64,
    /// Eigenvalue threshold for inertia counts.
    pub inertia: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { cluster: 1e-8, membership: 1e-8, near_degenerate: 1e-5, inertia: 1e-8 }
    }
}

impl Tolerances {
    pub fn set(&mut self, key: &str, value: f64) -> Result<(), String> {
        if !(value.is_finite() && value > 0.0) {
            return Err(format!("tolerance `{key}` must be positive and finite"));
        }
        match key {
            "cluster" => self.cluster = value,
            "membership" => self.membership = value,
            "near_degenerate" => self.near_degenerate = value,
            "inertia" => self.inertia = value,
            _ => return Err(format!("unknown tolerance `{key}`")),
        }
        Ok(())
    }
}
