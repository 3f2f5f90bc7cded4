use num_complex::Complex;
use num_traits::Zero;

use crate::multiplier_theory::Rational;
use crate::real::Real;

use super::field::SpectralField;
use super::grid::{GridGeometry, ZOOM};

/// Grid maxima refined directly when zero-padding is too large.
const LOCAL_CANDIDATES: usize = 2;
const NEWTON_STEPS: usize = 6;

/// Riemann-sum `L^p` norm; a zero reciprocal gives the refined sup norm.
pub fn lp_norm<T: Real>(field: &SpectralField<T>, p_inv: Rational) -> T {
    if p_inv.is_zero() {
        return sup_norm(field);
    }
    let p = T::lit(*p_inv.denom() as f64) / T::lit(*p_inv.numer() as f64);
    lp_norm_raw(field, p)
}

/// `L^p` norm for a real exponent `p >= 1` (no sup refinement).
pub fn lp_norm_raw<T: Real>(field: &SpectralField<T>, p: T) -> T {
    let m = field.max_abs();
    if m == T::zero() {
        return T::zero();
    }
    let vol = field.geometry().cell_volume();
    let s: T = field.values().iter().map(|v| (v.abs() / m).powf(p)).sum();
    m * (s * vol).powf(p.recip())
}

/// Sup norm of the trigonometric interpolant: 4x zero-padding locates the
/// peak, a few Newton steps on the interpolant polish it.
pub fn sup_norm<T: Real>(field: &SpectralField<T>) -> T {
    let g = field.geometry();
    let grid_max = field.max_abs();
    if grid_max == T::zero() {
        return grid_max;
    }
    let n = g.n();
    let mut best = grid_max;
    let mut starts: Vec<[T; 3]> = Vec::new();
    match g.refined_transform() {
        Some(t) => {
            let mut padded = zero_pad(g, field.coeffs());
            t.inverse(&mut padded);
            let scale = T::one() / T::from_usize_lossy(g.total());
            let (mut arg, mut top) = (0, T::zero());
            for (i, c) in padded.iter().enumerate() {
                let v = (c.re * scale).abs();
                if v > top {
                    top = v;
                    arg = i;
                }
            }
            best = best.max(top);
            let fine = g.points() * ZOOM;
            let step = g.spacing() / T::from_usize_lossy(ZOOM);
            let mut x = [T::zero(); 3];
            let mut rest = arg;
            for a in (0..n).rev() {
                x[a] = -g.half_width() + T::from_usize_lossy(rest % fine) * step;
                rest /= fine;
            }
            starts.push(x);
        }
        None => {
            let mut order: Vec<usize> = (0..g.total()).collect();
            order.sort_by(|&a, &b| field.values()[b].abs().partial_cmp(&field.values()[a].abs()).unwrap());
            starts.extend(order.iter().take(LOCAL_CANDIDATES).map(|&f| g.point(f)));
        }
    }
    for x in starts {
        best = best.max(polish(field, x));
    }
    best
}

/// Embeds coefficients in a grid `ZOOM` times finer; Nyquist slots are split evenly.
fn zero_pad<T: Real>(g: &GridGeometry<T>, coeffs: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = g.n();
    let m = g.points();
    let fine = m * ZOOM;
    let mut out = vec![Complex::zero(); fine.pow(n as u32)];
    let half = T::lit(0.5);
    for (flat, &c) in coeffs.iter().enumerate() {
        let idx = g.unflatten(flat);
        // each axis maps to one slot, or two half-weight slots for Nyquist
        let mut targets: Vec<(usize, T)> = vec![(0, T::one())];
        for &k in &idx[..n] {
            let slots: Vec<(usize, T)> = if k < m / 2 {
                vec![(k, T::one())]
            } else if k > m / 2 {
                vec![(k + fine - m, T::one())]
            } else {
                vec![(k, half), (fine - k, half)]
            };
            targets = targets
                .iter()
                .flat_map(|&(base, w)| slots.iter().map(move |&(s, ws)| (base * fine + s, w * ws)))
                .collect();
        }
        for (t, w) in targets {
            out[t] = out[t] + c * w;
        }
    }
    out
}

/// Value, gradient and Hessian of the trigonometric interpolant at `x`.
fn interpolant_jet<T: Real>(field: &SpectralField<T>, x: &[T; 3]) -> (T, [T; 3], [[T; 3]; 3]) {
    let g = field.geometry();
    let n = g.n();
    let l = g.half_width();
    let mut val = T::zero();
    let mut grad = [T::zero(); 3];
    let mut hess = [[T::zero(); 3]; 3];
    for (flat, c) in field.coeffs().iter().enumerate() {
        let idx = g.unflatten(flat);
        let mut xi = [T::zero(); 3];
        let mut phase = T::zero();
        for a in 0..n {
            xi[a] = g.axis_frequency(idx[a]);
            phase = phase + xi[a] * (x[a] + l);
        }
        let (s, co) = phase.sin_cos();
        // Re(c e^{iθ}) and its θ-derivatives
        let re = c.re * co - c.im * s;
        let d1 = -c.re * s - c.im * co;
        val = val + re;
        for a in 0..n {
            grad[a] = grad[a] + xi[a] * d1;
            for b in 0..n {
                hess[a][b] = hess[a][b] - xi[a] * xi[b] * re;
            }
        }
    }
    let inv = T::one() / T::from_usize_lossy(g.total());
    val = val * inv;
    for a in 0..n {
        grad[a] = grad[a] * inv;
        for b in 0..n {
            hess[a][b] = hess[a][b] * inv;
        }
    }
    (val, grad, hess)
}

/// Newton iteration towards a local extremum of the interpolant, confined to
/// one grid cell around the start. Returns the largest |value| seen.
fn polish<T: Real>(field: &SpectralField<T>, start: [T; 3]) -> T {
    let g = field.geometry();
    let n = g.n();
    let h = g.spacing();
    let mut x = start;
    let mut best = T::zero();
    for _ in 0..NEWTON_STEPS {
        let (v, grad, hess) = interpolant_jet(field, &x);
        best = best.max(v.abs());
        let Some(step) = solve_small(&hess, &grad, n) else { break };
        let mut moved = T::zero();
        for a in 0..n {
            let dx = (-step[a]).max(-h).min(h);
            x[a] = (x[a] + dx).max(start[a] - h).min(start[a] + h);
            moved = moved.max(dx.abs());
        }
        if moved < h * T::tol(1.0) {
            let (v, _, _) = interpolant_jet(field, &x);
            return best.max(v.abs());
        }
    }
    best
}

/// Solves `H s = g` for n <= 3 by Gaussian elimination with partial pivoting.
fn solve_small<T: Real>(h: &[[T; 3]; 3], g: &[T; 3], n: usize) -> Option<[T; 3]> {
    let mut a = *h;
    let mut b = *g;
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())?;
        if a[piv][col] == T::zero() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] = a[row][k] - f * a[col][k];
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut s = [T::zero(); 3];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc = acc - a[row][k] * s[k];
        }
        s[row] = acc / a[row][row];
    }
    s.iter().take(n).all(|v| v.is_finite()).then_some(s)
}
