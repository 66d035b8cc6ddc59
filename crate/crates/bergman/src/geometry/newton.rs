//! Damped Newton iteration for inverting the forward conformal maps.

use crate::num::{Cx, Real};

/// Iteration cap for every map inversion.
pub(crate) const MAX_STEPS: usize = 60;

/// Solve `f(x) = target` from `x0`, where `f` returns value and derivative
/// (or `None` outside its domain of evaluation). Steps are halved while they
/// fail to decrease the residual. Returns `None` on non-convergence.
pub(crate) fn solve<T: Real, F>(f: F, target: &Cx<T>, x0: Cx<T>) -> Option<Cx<T>>
where
    F: Fn(&Cx<T>) -> Option<(Cx<T>, Cx<T>)>,
{
    let prec = target.re.prec() as i32;
    let scale = target.abs().max_of(target.re.one());
    let res_tol = scale.mul_pow2(4 - prec);
    // Once a full step is below this size, quadratic convergence makes the
    // next iterate exact to working precision.
    let quad_tol = target.re.one().mul_pow2(-(prec / 2) - 12);
    let mut x = x0;
    let (mut fx, mut dfx) = f(&x)?;
    let mut res = (&fx - target).abs();
    for _ in 0..MAX_STEPS {
        if res <= res_tol {
            return Some(x);
        }
        if dfx.re == 0.0 && dfx.im == 0.0 {
            return None;
        }
        let step = &(&fx - target) / &dfx;
        let xs = x.abs().max_of(x.re.one());
        let small = step.abs() <= quad_tol.clone() * &xs;
        let mut t = x.re.one();
        let mut accepted = None;
        for _ in 0..30 {
            let cand = &x - &step.scale(&t);
            if let Some((fc, dc)) = f(&cand) {
                let rc = (&fc - target).abs();
                if small || rc < res {
                    accepted = Some((cand, fc, dc, rc));
                    break;
                }
            }
            t = t * 0.5;
        }
        let (cand, fc, dc, rc) = accepted?;
        x = cand;
        fx = fc;
        dfx = dc;
        res = rc;
        if small {
            return Some(x);
        }
    }
    if res <= res_tol.mul_pow2(8) {
        Some(x)
    } else {
        None
    }
}
