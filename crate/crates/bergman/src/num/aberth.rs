//! Simultaneous polynomial root finding (Aberth–Ehrlich), no deflation.

use super::{Cx, Real};

/// Outcome of an Aberth–Ehrlich run.
#[derive(Clone, Debug)]
pub struct AberthRun<T> {
    pub roots: Vec<Cx<T>>,
    pub sweeps: usize,
    pub converged: bool,
}

/// p(x) and p'(x) by Horner's rule.
fn eval_pd<T: Real>(c: &[Cx<T>], x: &Cx<T>) -> (Cx<T>, Cx<T>) {
    let mut p = x.zero_like();
    let mut dp = x.zero_like();
    for a in c.iter().rev() {
        dp = dp.mul_add(x, &p);
        p = p.mul_add(x, a);
    }
    (p, dp)
}

/// Equispaced starting points on a circle, rotated off the real axis so
/// that real or symmetric polynomials do not trap the iteration.
pub fn circle_start<T: Real>(like: &T, n: usize, radius: f64) -> Vec<Cx<T>> {
    (0..n)
        .map(|j| {
            let th = like.pi() * (2.0 * j as f64 + 0.5) / n as f64;
            Cx::cis(&th).scale(&like.lit(radius))
        })
        .collect()
}

/// Refine `start` towards the roots of Σ c_k x^k (ascending coefficients,
/// nonzero leading coefficient) until every correction is below
/// `rel_tol`·max(1, |x|), or `max_sweeps` Gauss–Seidel sweeps have run.
pub fn aberth<T: Real>(c: &[Cx<T>], start: Vec<Cx<T>>, rel_tol: &T, max_sweeps: usize) -> AberthRun<T> {
    let mut roots = start;
    let n = roots.len();
    let one = rel_tol.one();
    for sweep in 1..=max_sweeps {
        let mut worst = rel_tol.zero();
        for i in 0..n {
            let (p, dp) = eval_pd(c, &roots[i]);
            if p.re == 0.0 && p.im == 0.0 {
                continue;
            }
            let ratio = &p / &dp;
            let mut sum = roots[i].zero_like();
            for j in 0..n {
                if j != i {
                    sum += (&roots[i] - &roots[j]).recip();
                }
            }
            let den = &roots[i].one_like() - &(&ratio * &sum);
            let step = &ratio / &den;
            if !step.is_finite() {
                continue;
            }
            let size = roots[i].abs().max_of(one.clone());
            let rel = step.abs() / &size;
            if rel > worst {
                worst = rel;
            }
            roots[i] -= &step;
        }
        if worst <= *rel_tol {
            return AberthRun { roots, sweeps: sweep, converged: true };
        }
    }
    AberthRun { roots, sweeps: max_sweeps, converged: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::C64;

    #[test]
    fn finds_roots_of_unity_and_a_double_root() {
        // x^5 − 1
        let mut c = vec![C64::c64(0.0, 0.0); 6];
        c[0] = C64::c64(-1.0, 0.0);
        c[5] = C64::c64(1.0, 0.0);
        let run = aberth(&c, circle_start(&1.0, 5, 0.5), &1e-14, 500);
        assert!(run.converged);
        for r in &run.roots {
            assert!((r.powi(5) - C64::c64(1.0, 0.0)).abs() < 1e-12);
        }
        // (x − 2)²(x + 1) = x³ − 3x² + 4
        let c = [4.0, 0.0, -3.0, 1.0].map(|a| C64::c64(a, 0.0));
        let run = aberth(&c, circle_start(&1.0, 3, 1.0), &1e-10, 500);
        let mut re: Vec<f64> = run.roots.iter().map(|r| r.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 1.0).abs() < 1e-10 && (re[1] - 2.0).abs() < 1e-6 && (re[2] - 2.0).abs() < 1e-6);
    }
}
