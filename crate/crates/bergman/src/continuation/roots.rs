//! From power sums to roots (small degree, f64).

use crate::num::{aberth, circle_start, C64};

/// Monic polynomial (ascending coefficients) whose k roots have power sums
/// s[0] = Σ w, s[1] = Σ w², …, by Newton's identities
/// m·e_m = Σ_{i=1}^{m} (−1)^(i−1) e_{m−i} s_i.
pub fn newton_identities(s: &[C64], k: usize) -> Vec<C64> {
    let mut e = vec![C64::c64(1.0, 0.0)];
    for m in 1..=k {
        let mut acc = C64::c64(0.0, 0.0);
        for i in 1..=m {
            let t = &e[m - i] * &s[i - 1];
            if i % 2 == 1 {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        e.push(acc.scale_f(1.0 / m as f64));
    }
    // ∏(w − w_j) = Σ_m (−1)^m e_m w^(k−m)
    let mut c = vec![C64::c64(0.0, 0.0); k + 1];
    for (m, em) in e.iter().enumerate() {
        c[k - m] = if m % 2 == 0 { em.clone() } else { -em.clone() };
    }
    c
}

/// Roots of a small polynomial in f64.
pub fn poly_roots_f64(c: &[C64]) -> Vec<C64> {
    let k = c.len() - 1;
    match k {
        0 => vec![],
        1 => vec![-(&c[0] / &c[1])],
        _ => {
            let lead = c[k].abs();
            let radius = (c[0].abs() / lead).powf(1.0 / k as f64).max(1e-3);
            aberth(c, circle_start(&1.0, k, radius), &1e-15, 500).roots
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sums_recover_roots() {
        let roots = [C64::c64(0.5, 0.1), C64::c64(-0.3, 0.4), C64::c64(0.2, -0.6)];
        let s: Vec<C64> = (1..=3)
            .map(|q| roots.iter().fold(C64::c64(0.0, 0.0), |a, r| a + r.powi(q)))
            .collect();
        let c = newton_identities(&s, 3);
        let mut got = poly_roots_f64(&c);
        for r in &roots {
            let (i, _) = got
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - r).abs().partial_cmp(&(b.1 - r).abs()).unwrap())
                .unwrap();
            assert!((&got[i] - r).abs() < 1e-12);
            got.remove(i);
        }
    }
}
