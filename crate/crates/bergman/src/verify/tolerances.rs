//! Pass/fail thresholds of the acceptance checks, one place for all of them.
//!
//! | Group | Basis |
//! |-------|-------|
//! | Closed forms | exact values at 256 bits; the bounds leave > 100 bits slack |
//! | Structural identities | quantities that vanish identically; bounded by the loss in the Gram/Cholesky route |
//! | Zero locations | symmetric domains whose zeros sit on known segments |
//! | Rates | empirical sequences over a finite range of n |

/// Disk: p_n, λ_n, α_{n,k}, h(n,j), Q_n and A_n against their closed forms.
pub const DISK_CLOSED_FORM: f64 = 1e-30;

/// Boundary-integral moments against the two-dimensional tensor rule.
pub const MOMENT_ORACLE: f64 = 1e-25;

/// |(n+1)γ^(2(n+1))/λ_n² − 1 + β_{n,n} + ε_{n,n}|.
pub const IDENTITY_RESIDUAL: f64 = 1e-20;

/// max_{k<n≤24} |α_{n,k}|: the entries below the diagonal vanish.
pub const ALPHA_BELOW_DIAGONAL: f64 = 1e-18;

/// Every doubling of the truncation J must shrink the series error by at
/// least this factor.
pub const SERIES_SHRINK: f64 = 2.0;

/// Distance of square and triangle zeros from the spokes Γ_N.
pub const SPOKE_DISTANCE: f64 = 1e-6;

/// |Re ζ| of lens zeros.
pub const LENS_REAL_PART: f64 = 1e-8;

/// For the pentagon, some zero of p_50 must lie farther than this from Γ_5.
pub const OFF_SPOKE_DISTANCE: f64 = 0.05;

/// Pentagon: |running max of |p_n(z)|^(1/n) − 1| at n = 64.
pub const LIMSUP_ONE: f64 = 0.05;

/// Rate sequences: the last value may exceed the smallest by this factor.
pub const RATE_GROWTH: f64 = 2.0;

/// Square: |running max of |p_n(z)|^(1/n) − r(z)| at n = 64.
pub const LIMSUP_VS_R: f64 = 0.02;

/// Residue remainder: max K_n over the upper half of the range against
/// the lower half.
pub const RESIDUE_GROWTH: f64 = 2.0;

/// Offset of the two mid-edge points from the boundary, along the normal.
pub const EDGE_OFFSET: f64 = 1e-3;
