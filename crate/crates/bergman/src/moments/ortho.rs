//! Orthonormal Bergman polynomials from the Gram matrix.

use rug::{Assign, Float};
use serde::{Deserialize, Serialize};

use super::{acc_mul, MomentMatrix};
use crate::error::{Error, Result};
use crate::num::{horner, Cmp, Cx, CxVecOf, Dual, Real};

/// p_0, …, p_N as rows of monomial coefficients (lower triangular).
#[derive(Clone, Debug)]
pub struct OrthonormalSystem {
    rows: Vec<Dual<CxVecOf>>,
    prec: u32,
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    degree_max: usize,
    precision_bits: u32,
    rows: Vec<Vec<[String; 2]>>,
}

/// Orthonormalize 1, z, …, z^N against M by the Cholesky factorization
/// M = L·L* (L lower triangular with positive diagonal); the coefficient
/// table is L^(-1), so that p_n has leading coefficient λ_n = 1/L[n][n].
pub fn orthonormalize(m: &MomentMatrix) -> Result<OrthonormalSystem> {
    let prec = m.precision();
    let n = m.degree() + 1;
    let like = Float::new(prec);
    let zero = Cx::lit(&like, 0.0, 0.0);
    let mut l = vec![vec![zero.clone(); n]; n];
    let mut tmp = Float::new(prec);
    for j in 0..n {
        let mut s = m.get(j, j).clone();
        for k in 0..j {
            s.re -= l[j][k].norm_sqr();
        }
        if s.re <= 0.0 || !s.re.is_finite() {
            return Err(Error::PrecisionExhausted(format!(
                "Cholesky pivot {j} is {:e}; raise the precision or lower the degree",
                s.re.to_f64()
            )));
        }
        let d = Real::sqrt(&s.re);
        l[j][j] = Cx::real(d.clone());
        for i in (j + 1)..n {
            let mut acc = m.get(i, j).clone();
            let mut neg = zero.clone();
            for k in 0..j {
                acc_mul(&mut neg, &l[i][k], &l[j][k].conj(), &mut tmp);
            }
            acc -= &neg;
            l[i][j] = Cx::new(acc.re / &d, acc.im / &d);
        }
    }
    // C = L^(-1) by forward substitution, one column at a time.
    let mut c = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        c[i][i] = Cx::real(l[i][i].re.clone().recip());
    }
    for j in 0..n {
        for i in (j + 1)..n {
            let mut acc = zero.clone();
            for k in j..i {
                acc_mul(&mut acc, &l[i][k], &c[k][j], &mut tmp);
            }
            let inv = &c[i][i].re;
            c[i][j] = Cx::new(-(acc.re * inv), -(acc.im * inv));
        }
    }
    let rows = c
        .into_iter()
        .enumerate()
        .map(|(i, mut r)| {
            r.truncate(i + 1);
            Dual::<CxVecOf>::from_mp(r)
        })
        .collect();
    Ok(OrthonormalSystem { rows, prec })
}

impl OrthonormalSystem {
    pub fn degree_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Monomial coefficients of p_n (ascending).
    pub fn coeffs(&self, n: usize) -> Result<&[Cmp]> {
        self.check(n)?;
        Ok(&self.rows[n].mp)
    }

    /// Monomial coefficients of p_n in the scalar type `T`.
    pub fn coeffs_t<T: Real>(&self, n: usize) -> Result<&[Cx<T>]> {
        self.check(n)?;
        Ok(self.rows[n].get::<T>())
    }

    /// λ_n, the (positive) leading coefficient of p_n.
    pub fn leading(&self, n: usize) -> Result<Float> {
        self.check(n)?;
        Ok(self.rows[n].mp[n].re.clone())
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.degree_max() {
            return Err(Error::DegreeOutOfRange { n, max: self.degree_max() });
        }
        Ok(())
    }

    /// p_n(z) by Horner's rule.
    pub fn eval_p<T: Real>(&self, n: usize, z: &Cx<T>) -> Result<Cx<T>> {
        Ok(horner(self.coeffs_t::<T>(n)?, z))
    }

    /// p_n'(z) by Horner's rule on the differentiated coefficients.
    pub fn eval_p_prime<T: Real>(&self, n: usize, z: &Cx<T>) -> Result<Cx<T>> {
        let c = self.coeffs_t::<T>(n)?;
        let mut acc = z.zero_like();
        for (k, a) in c.iter().enumerate().skip(1).rev() {
            acc = acc.mul_add(z, &a.scale_f(k as f64));
        }
        Ok(acc)
    }

    /// max |⟨p_m, p_n⟩ − δ_mn| over m, n ≤ N, computed against M.
    pub fn orthonormality_residual(&self, m: &MomentMatrix) -> Float {
        let n = self.rows.len().min(m.degree() + 1);
        let mut worst = Float::new(self.prec);
        for a in 0..n {
            for b in 0..=a {
                let g = m.inner(&self.rows[a].mp, &self.rows[b].mp);
                let mut g = g;
                if a == b {
                    g.re -= 1u32;
                }
                let e = g.abs();
                if e > worst {
                    worst.assign(&e);
                }
            }
        }
        worst
    }

    /// JSON with every real written as a decimal string that reloads
    /// exactly at the stored precision.
    pub fn to_json(&self) -> String {
        let rows = self
            .rows
            .iter()
            .map(|r| r.mp.iter().map(|c| [dec(&c.re), dec(&c.im)]).collect())
            .collect();
        let j = SystemJson { degree_max: self.degree_max(), precision_bits: self.prec, rows };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: SystemJson =
            serde_json::from_str(s).map_err(|e| Error::InvalidParameter(format!("system JSON: {e}")))?;
        let like = Float::new(j.precision_bits);
        let parse = |t: &str| {
            like.parse_like(t)
                .ok_or_else(|| Error::InvalidParameter(format!("bad decimal `{t}`")))
        };
        let mut rows = Vec::with_capacity(j.rows.len());
        for r in &j.rows {
            let v = r
                .iter()
                .map(|[a, b]| Ok(Cx::new(parse(a)?, parse(b)?)))
                .collect::<Result<Vec<_>>>()?;
            rows.push(Dual::<CxVecOf>::from_mp(v));
        }
        if rows.len() != j.degree_max + 1 {
            return Err(Error::InvalidParameter("row count does not match degree_max".into()));
        }
        Ok(OrthonormalSystem { rows, prec: j.precision_bits })
    }
}

/// Shortest decimal string that reads back to exactly `x`.
pub(crate) fn dec(x: &Float) -> String {
    format!("{x}")
}
