//! Euler-type partial-fraction identities.
//!
//! Both families of full sums vanish for every nonzero integer `n`:
//!
//! ```text
//! sum_{k in Z} (n^2 - k^2)  / (n^4 + n^2 k^2 + k^4) = 0,
//! sum_{k in Z} (n^2 - 2k^2) / (n^4 + 4 k^4)         = 0.
//! ```
//!
//! They are the cancellation mechanism behind the vanishing of the nonzero
//! even fourth-chaos modes and of the quartic correction in the
//! red-blue-red mean. The truncated values decay like `O(1/K)`.

/// Which partial-fraction family to sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartialFractionVariant {
    /// `(n^2 - k^2) / (n^4 + n^2 k^2 + k^4)`.
    Cubic,
    /// `(n^2 - 2k^2) / (n^4 + 4 k^4)`.
    Quartic,
}

/// Symmetric truncation `sum_{|k| <= k_max}` of the chosen family.
///
/// Requires `n != 0`; the value is even in `n` exactly.
pub fn partial_fraction_sum(n: i64, variant: PartialFractionVariant, k_max: i64) -> f64 {
    assert!(n != 0, "partial_fraction_sum needs n != 0");
    let n2 = (n as f64) * (n as f64);
    let n4 = n2 * n2;
    let mut acc = 0.0;
    for k in -k_max..=k_max {
        let k2 = (k as f64) * (k as f64);
        acc += match variant {
            PartialFractionVariant::Cubic => (n2 - k2) / (n4 + n2 * k2 + k2 * k2),
            PartialFractionVariant::Quartic => (n2 - 2.0 * k2) / (n4 + 4.0 * k2 * k2),
        };
    }
    acc
}
