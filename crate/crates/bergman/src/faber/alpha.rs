//! The coefficients α_{n,k} and the h/g recursion tables.

use rug::Float;

use crate::error::{Error, Result};
use crate::geometry::DomainModel;
use crate::moments::{acc_mul, OrthonormalSystem};
use crate::num::{roots_of_unity, Cmp, Cx};

/// α_{n,k} for 0 ≤ n, k ≤ K, including the k < n entries that vanish in
/// exact arithmetic (kept so the triangularity can be checked).
#[derive(Clone, Debug)]
pub struct AlphaTable {
    entries: Vec<Vec<Cmp>>,
    /// Radius of the sampling circle in the w-plane.
    pub radius: Float,
    /// Number of trapezoid samples.
    pub samples: usize,
}

impl AlphaTable {
    /// α_{n,k} = conj(ĝ_n), where ĝ_n is the coefficient of w^n in the
    /// Laurent expansion of g(w) = p_k(ψ(w))·ψ'(w) at infinity.
    ///
    /// g is analytic for |w| > 1, so the coefficient is read off a circle
    /// |w| = 3/2 by the trapezoid rule, which converges geometrically there
    /// (the corners only affect |w| = 1). With T[j][n] the w^n coefficient of
    /// ψ^j ψ', α_{n,k} = conj(Σ_j C[k][j] T[j][n]).
    pub fn build(d: &DomainModel, sys: &OrthonormalSystem, kmax: usize) -> Result<Self> {
        if kmax > sys.degree_max() {
            return Err(Error::DegreeOutOfRange { n: kmax, max: sys.degree_max() });
        }
        let prec = d.precision();
        let like = Float::new(prec);
        let radius = Float::with_val(prec, 3) / 2u32;
        // aliasing error is O(R^-M); ask for 32 bits beyond the precision
        let m = (((prec + 32) as f64 / 1.5f64.log2()).ceil() as usize).next_power_of_two();
        let units = roots_of_unity(&like, m);
        let mut vals = Vec::with_capacity(m);
        let mut ders = Vec::with_capacity(m);
        for u in &units {
            let (z, dz) = d.psi(&u.scale(&radius))?;
            vals.push(z);
            ders.push(dz);
        }
        // t[j][n] for j, n ≤ K
        let mut tmp = Float::new(prec);
        let mut t = vec![Vec::with_capacity(kmax + 1); kmax + 1];
        let mut pw = ders.clone();
        for row in t.iter_mut() {
            let mut rn = Float::with_val(prec, m as u32);
            for n in 0..=kmax {
                let mut acc = Cx::lit(&like, 0.0, 0.0);
                for (i, p) in pw.iter().enumerate() {
                    acc_mul(&mut acc, p, &units[(m - (i * n) % m) % m], &mut tmp);
                }
                row.push(acc.scale(&rn.clone().recip()));
                rn *= &radius;
            }
            for (p, v) in pw.iter_mut().zip(&vals) {
                *p *= v;
            }
        }
        let coeffs = (0..=kmax).map(|k| sys.coeffs(k)).collect::<Result<Vec<_>>>()?;
        let entries = (0..=kmax)
            .map(|n| {
                coeffs
                    .iter()
                    .map(|c| {
                        let mut acc = Cx::lit(&like, 0.0, 0.0);
                        for (j, cj) in c.iter().enumerate() {
                            acc_mul(&mut acc, cj, &t[j][n], &mut tmp);
                        }
                        acc.conj()
                    })
                    .collect()
            })
            .collect();
        Ok(AlphaTable { entries, radius, samples: m })
    }

    pub fn kmax(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> &Cmp {
        &self.entries[n][k]
    }

    /// max |α_{n,k}| over k < n ≤ nmax.
    pub fn max_below_diagonal(&self, nmax: usize) -> Float {
        let mut worst = Float::new(self.radius.prec());
        for n in 1..=nmax.min(self.kmax()) {
            for k in 0..n {
                let a = self.entries[n][k].abs();
                if a > worst {
                    worst = a;
                }
            }
        }
        worst
    }
}

/// A single α_{n,k}.
pub fn alpha(d: &DomainModel, sys: &OrthonormalSystem, n: usize, k: usize) -> Result<Cmp> {
    Ok(AlphaTable::build(d, sys, n.max(k))?.get(n, k).clone())
}

/// h(n, 0..=J) for one n.
#[derive(Clone, Debug)]
pub struct HgRow {
    pub n: usize,
    pub h: Vec<Cmp>,
}

/// h(n,0) = 1, g(n,0,k) = −α_{n,k}, and for m ≥ 0
///   h(n,m+1) = g(n,m,n+m+1)/α_{n+m+1,n+m+1},
///   g(n,m+1,k) = g(n,m,k) − h(n,m+1)·α_{n+m+1,k}   (k > n+m+1).
pub fn hg_tables(a: &AlphaTable, n: usize, j: usize) -> Result<HgRow> {
    let top = n + j;
    if top > a.kmax() {
        return Err(Error::DegreeOutOfRange { n: top, max: a.kmax() });
    }
    let prec = a.radius.prec();
    let like = Float::new(prec);
    let tiny = Float::with_val(prec, 1) << (32 - prec as i32);
    let mut h = vec![Cx::lit(&like, 1.0, 0.0)];
    // g[k] for k in n+1..=top (index k directly; lower entries unused)
    let mut g: Vec<Cmp> = (0..=top).map(|k| if k > n { -a.get(n, k).clone() } else { Cx::lit(&like, 0.0, 0.0) }).collect();
    let mut tmp = Float::new(prec);
    for m in 0..j {
        let piv = a.get(n + m + 1, n + m + 1);
        if piv.abs() < tiny {
            return Err(Error::PrecisionExhausted(format!("α_{{{0},{0}}} vanishes", n + m + 1)));
        }
        let hm = &g[n + m + 1] / piv;
        let neg = -hm.clone();
        for k in (n + m + 2)..=top {
            let mut acc = g[k].clone();
            acc_mul(&mut acc, &neg, a.get(n + m + 1, k), &mut tmp);
            g[k] = acc;
        }
        h.push(hm);
    }
    Ok(HgRow { n, h })
}

/// Diagonal quantities and recursion rows collected for export.
#[derive(Clone, Debug)]
pub struct CoefficientTables {
    pub alpha: AlphaTable,
    /// ε_{n,n}, n = 0..=N.
    pub eps: Vec<Float>,
    /// β_{n,n}, n = 0..=N.
    pub beta: Vec<Float>,
    /// Residual of the λ_n identity, n = 0..=N.
    pub residual: Vec<Float>,
    /// h(n, 0..=J_n) for n = 0..=N with J_n = min(2n, K − n).
    pub h: Vec<HgRow>,
}
