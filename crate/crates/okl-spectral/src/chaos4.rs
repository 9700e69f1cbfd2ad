//! Fourth-chaos mode sums: the candelabra and moose expectations.
//!
//! Both expectations diverge logarithmically as `zeta -> 0`, but the
//! divergences cancel in the combination `candelabra + 4 * moose`:
//!
//! * zero mode: the combined limit is `-1/3`,
//! * nonzero even modes `2n`: the combined limit vanishes, by the Euler
//!   identity for `(n^2 - k^2)/(n^4 + n^2 k^2 + k^4)`,
//! * odd modes vanish identically,
//!
//! so pairing against the boundary potential leaves exactly
//! `L * phi_hat(0) * (-1/3) = (u + v)/6`.
//!
//! Zero modes are evaluated as their double mode sums; nonzero modes use
//! the exact single-sum decompositions (`S1 + S2` for the candelabra,
//! `S3 + S4 + S5` for the moose) obtained by resolving the Kronecker deltas
//! of the pair-correlation structure.

use crate::phi::phi_hat;
use okl_lattice::{sha_hat, BoundaryParams};
use std::f64::consts::PI;

/// Comb-transform table over `|m| <= m_max`, indexed by `m + m_max`.
struct ShTable {
    m_max: i64,
    values: Vec<f64>,
}

impl ShTable {
    fn new(l: f64, zeta: f64, m_max: i64) -> Self {
        let values = (-m_max..=m_max).map(|m| sha_hat(l, zeta, m)).collect();
        Self { m_max, values }
    }

    #[inline]
    fn at(&self, m: i64) -> f64 {
        self.values[(m + self.m_max) as usize]
    }
}

/// Expectation of the candelabra Fourier mode `2n` at finite `zeta`,
/// truncated symmetrically at `k_max`.
pub fn candelabra_mode(l: f64, zeta: f64, n: i64, k_max: i64) -> f64 {
    let pref = 8.0 * l * l / (PI * PI);
    if n == 0 {
        let sh = ShTable::new(l, zeta, 2 * k_max);
        let mut acc = 0.0;
        for k in -k_max..=k_max {
            if k == 0 {
                continue;
            }
            let k2 = (k * k) as f64;
            for ell in -k_max..=k_max {
                if ell == 0 || ell == k {
                    continue;
                }
                let d = k2 + (ell * ell + (k - ell) * (k - ell)) as f64;
                acc += sh.at(ell) * sh.at(k - ell) / d;
            }
        }
        return pref * acc;
    }
    let sh = ShTable::new(l, zeta, n.abs() + k_max);
    let nf = n as f64;
    let (n2, n4) = (nf * nf, nf * nf * nf * nf);
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for k in -k_max..=k_max {
        let kf = k as f64;
        let k2 = kf * kf;
        s1 += sh.at(k) * (n2 - k2) / (n4 + n2 * k2 + k2 * k2);
        let d2 = n2 + ((n - k) * (n - k) + k * k) as f64;
        s2 += sh.at(n - k) * sh.at(k) / d2;
    }
    pref * (sh.at(n) * s1 - s2)
}

/// Expectation of the moose Fourier mode `2n` at finite `zeta`, truncated
/// symmetrically at `k_max`.
pub fn moose_mode(l: f64, zeta: f64, n: i64, k_max: i64) -> f64 {
    let pref = 8.0 * l * l / (PI * PI);
    if n == 0 {
        let sh = ShTable::new(l, zeta, 2 * k_max);
        let mut acc = 0.0;
        for k in -k_max..=k_max {
            if k == 0 {
                continue;
            }
            let kf = k as f64;
            for ell in -k_max..=k_max {
                if ell == 0 || ell == k {
                    continue;
                }
                let d = (ell * ell + k * k + (k - ell) * (k - ell)) as f64;
                acc += ell as f64 / kf * sh.at(k) * sh.at(k - ell) / d;
            }
        }
        return -0.5 * pref * acc;
    }
    let sh = ShTable::new(l, zeta, 2 * n.abs() + k_max);
    let nf = n as f64;
    let n2 = nf * nf;
    let mut s3 = 0.0;
    let mut s4 = 0.0;
    let mut s5 = 0.0;
    for k in -k_max..=k_max {
        let kf = k as f64;
        // S3 (index is the free summation variable of its own sum)
        let dp = ((n + k) * (n + k) + n * n + k * k) as f64;
        let dm = ((n - k) * (n - k) + n * n + k * k) as f64;
        s3 += sh.at(k) / (dp * dm);
        // S4 and S5 share the heat-kernel factor k^2 + (2n-k)^2.
        let dh = (k * k + (2 * n - k) * (2 * n - k)) as f64;
        let d4 = ((n - k) * (n - k) + (2 * n - k) * (2 * n - k) + n * n) as f64;
        s4 += sh.at(2 * n - k) * (kf * (kf - nf)) / (d4 * dh);
        let d5 = (n * n + (2 * n - k) * (2 * n - k) + (k - n) * (k - n)) as f64;
        s5 += sh.at(2 * n - k) * sh.at(k - n) * (kf * nf) / (d5 * dh);
    }
    pref * (n2 * sh.at(n) * s3 + sh.at(n) * s4 - s5)
}

/// `zeta -> 0` limit of the candelabra mode `2n`, `n != 0`:
/// `(1/pi^2) sum_k (n^2 - 3k^2) / (n^4 + n^2 k^2 + k^4)`.
pub fn candelabra_mode_limit(n: i64, k_max: i64) -> f64 {
    assert!(n != 0, "the zero-mode limit diverges logarithmically");
    let nf = n as f64;
    let (n2, n4) = (nf * nf, nf * nf * nf * nf);
    let mut acc = 0.0;
    for k in -k_max..=k_max {
        let k2 = (k * k) as f64;
        acc += (n2 - 3.0 * k2) / (n4 + n2 * k2 + k2 * k2);
    }
    acc / (PI * PI)
}

/// `zeta -> 0` limit of the moose mode `2n`, `n != 0`:
/// `(n^2 / 2 pi^2) sum_l 1 / (l^4 + l^2 n^2 + n^4)`.
pub fn moose_mode_limit(n: i64, k_max: i64) -> f64 {
    assert!(n != 0, "the zero-mode limit diverges logarithmically");
    let nf = n as f64;
    let (n2, n4) = (nf * nf, nf * nf * nf * nf);
    let mut acc = 0.0;
    for ell in -k_max..=k_max {
        let l2 = (ell * ell) as f64;
        acc += 1.0 / (l2 * l2 + l2 * n2 + n4);
    }
    n2 * acc / (2.0 * PI * PI)
}

/// `zeta -> 0` limit of the combined mode `candelabra + 4 * moose` at
/// `2n`, `n != 0`; vanishes as `k_max -> infinity` by the Euler identity.
pub fn even_mode_fourth_chaos_limit(n: i64, k_max: i64) -> f64 {
    candelabra_mode_limit(n, k_max) + 4.0 * moose_mode_limit(n, k_max)
}

/// The combined zero mode in its collapsed single-sum form,
/// `-(4L^2/pi^2) sum_{k != 0} Sha_hat(k)^2 / k^2`, exactly equal to the
/// double-sum combination over full mode ranges.
pub fn combined_zero_mode_collapsed(l: f64, zeta: f64, k_max: i64) -> f64 {
    let mut acc = 0.0;
    for k in 1..=k_max {
        let s = sha_hat(l, zeta, k);
        acc += s * s / (k * k) as f64;
    }
    -8.0 * l * l / (PI * PI) * acc
}

/// The combined fourth-chaos zero mode `candelabra(0) + 4 * moose(0)` for
/// each scale in `zeta_sequence` (which must be decreasing); the sequence
/// converges to `-1/3`.
pub fn zero_mode_fourth_chaos(l: f64, zeta_sequence: &[f64], k_max: i64) -> Vec<f64> {
    assert!(
        zeta_sequence.windows(2).all(|w| w[1] < w[0]),
        "zeta sequence must be decreasing"
    );
    zeta_sequence
        .iter()
        .map(|&z| candelabra_mode(l, z, 0, k_max) + 4.0 * moose_mode(l, z, 0, k_max))
        .collect()
}

/// Boundary pairing of the combined fourth-chaos field,
/// `L * sum_j phi_hat(j) (candelabra + 4 moose)^hat(j)` (only even modes
/// contribute), for each scale in `zeta_sequence`; converges to
/// `(u + v)/6` as `zeta -> 0`.
pub fn boundary_fourth_chaos(
    params: BoundaryParams,
    eps: f64,
    l: f64,
    zeta_sequence: &[f64],
    k_max: i64,
) -> Vec<f64> {
    // phi_hat(2n) vanishes (clamped transform) once 2n eps / L > 220.
    let n_cut = (110.0 * l / eps).ceil() as i64;
    let n_max = n_cut.min(k_max);
    zeta_sequence
        .iter()
        .map(|&z| {
            let mut acc =
                phi_hat(params, eps, l, 0) * (candelabra_mode(l, z, 0, k_max)
                    + 4.0 * moose_mode(l, z, 0, k_max));
            for n in 1..=n_max {
                let p = phi_hat(params, eps, l, 2 * n);
                if p == 0.0 {
                    continue;
                }
                // modes are even in n, so fold the negative half in
                acc += 2.0
                    * p
                    * (candelabra_mode(l, z, n, k_max) + 4.0 * moose_mode(l, z, n, k_max));
            }
            l * acc
        })
        .collect()
}

/// The candelabra renormalization constant: the spatial average of the
/// candelabra expectation, i.e. its Fourier zero mode. Diverges
/// logarithmically in `1/zeta`; the divergence cancels against
/// `4 * moose_mode(.., 0, ..)`.
pub fn c2_constant(l: f64, zeta: f64, k_max: i64) -> f64 {
    candelabra_mode(l, zeta, 0, k_max)
}
