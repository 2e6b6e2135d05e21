/// Size caps bounding enumeration and linear algebra.
///
/// The defaults are chosen so that everything completes in minutes on a
/// desktop machine with exact arithmetic; they can be raised explicitly by
/// callers who accept long runtimes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Largest ground-set size for set-partition enumeration
    /// (`Bell(12) = 4_213_597` partitions is the practical desk limit).
    pub max_partition_size: usize,
    /// Largest tensor-space dimension `n^d` for matrix realizations.
    pub max_tensor_dim: usize,
    /// Largest `n` accepted by the Molien oracle.
    pub molien_max_n: usize,
    /// Largest `d` accepted by the Molien oracle.
    pub molien_max_d: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_partition_size: 12,
            max_tensor_dim: 4096,
            molien_max_n: 8,
            molien_max_d: 8,
        }
    }
}

impl Caps {
    /// Checks `value <= cap`, reporting which cap tripped.
    pub(crate) fn check(
        &self,
        what: &'static str,
        value: usize,
        cap: usize,
    ) -> crate::Result<()> {
        if value > cap {
            Err(crate::Error::LimitExceeded { what, value, cap })
        } else {
            Ok(())
        }
    }

    /// Cap check for a ground set of size `m` (partitions of `[1, m]`).
    pub fn check_partition_size(&self, m: usize) -> crate::Result<()> {
        self.check("ground set size", m, self.max_partition_size)
    }

    /// Cap check for the tensor dimension `n^d`.
    pub fn check_tensor_dim(&self, n: usize, d: usize) -> crate::Result<()> {
        let mut dim = 1usize;
        for _ in 0..d {
            dim = dim.saturating_mul(n.max(1));
            if dim > self.max_tensor_dim {
                return Err(crate::Error::LimitExceeded {
                    what: "tensor dimension n^d",
                    value: dim,
                    cap: self.max_tensor_dim,
                });
            }
        }
        Ok(())
    }
}
