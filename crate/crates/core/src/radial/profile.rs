use crate::error::{Error, Result};
use crate::real::{bracket, Real};

/// A radial spectrum `f̂(r)` with compact support `[r_lo, r_hi]`, `r_lo > 0`.
pub trait RadialSpectrum<T: Real>: Sync {
    fn value(&self, r: T) -> T;
    fn support(&self) -> (T, T);

    /// `g(r) = f̂(r) r^{(n-1)/2} / ⟨r²⟩`.
    fn amplitude(&self, r: T, n: usize) -> T {
        let e = T::from_usize_lossy(n.saturating_sub(1)) * T::lit(0.5);
        self.value(r) * r.powf(e) / bracket(r * r)
    }
}

fn check_support<T: Real>(lo: T, hi: T) -> Result<()> {
    if !(lo > T::zero() && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidDatum(format!("support [{lo}, {hi}] must satisfy 0 < lo < hi")));
    }
    Ok(())
}

/// Smooth bump `exp(1 - 1/(1 - s²))` on `(lo, hi)`, peak `amplitude` at the midpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusBump<T> {
    pub lo: T,
    pub hi: T,
    pub amplitude: T,
}

impl<T: Real> AnnulusBump<T> {
    pub fn new(lo: T, hi: T, amplitude: T) -> Result<Self> {
        check_support(lo, hi)?;
        Ok(Self { lo, hi, amplitude })
    }
}

impl<T: Real> RadialSpectrum<T> for AnnulusBump<T> {
    fn value(&self, r: T) -> T {
        let s = (T::lit(2.0) * r - self.lo - self.hi) / (self.hi - self.lo);
        let d = T::one() - s * s;
        if d <= T::zero() {
            T::zero()
        } else {
            self.amplitude * (T::one() - d.recip()).exp()
        }
    }

    fn support(&self) -> (T, T) {
        (self.lo, self.hi)
    }
}

/// Piecewise-linear tent `1 - |s|` on `(lo, hi)`; used where a profile with
/// limited smoothness is wanted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tent<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> RadialSpectrum<T> for Tent<T> {
    fn value(&self, r: T) -> T {
        let s = (T::lit(2.0) * r - self.lo - self.hi) / (self.hi - self.lo);
        (T::one() - s.abs()).max(T::zero())
    }

    fn support(&self) -> (T, T) {
        (self.lo, self.hi)
    }
}

/// Tabulated profile, natural cubic spline between nodes, zero outside.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile<T> {
    nodes: Vec<T>,
    values: Vec<T>,
    second: Vec<T>,
}

impl<T: Real> RadialProfile<T> {
    /// Nodes must increase strictly; the first and last values must be zero.
    pub fn new(nodes: Vec<T>, values: Vec<T>) -> Result<Self> {
        if nodes.len() < 3 || nodes.len() != values.len() {
            return Err(Error::InvalidDatum("need at least three nodes with matching values".into()));
        }
        check_support(nodes[0], nodes[nodes.len() - 1])?;
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidDatum("nodes must increase strictly".into()));
        }
        if values[0] != T::zero() || values[values.len() - 1] != T::zero() {
            return Err(Error::InvalidDatum("profile must vanish at the support endpoints".into()));
        }
        let second = natural_spline(&nodes, &values);
        Ok(Self { nodes, values, second })
    }

    /// Tabulates `f` at `count` equispaced nodes on `[lo, hi]`; endpoint values forced to 0.
    pub fn sample(lo: T, hi: T, count: usize, f: impl Fn(T) -> T) -> Result<Self> {
        check_support(lo, hi)?;
        let count = count.max(3);
        let step = (hi - lo) / T::from_usize_lossy(count - 1);
        let nodes: Vec<T> = (0..count).map(|i| lo + step * T::from_usize_lossy(i)).collect();
        let mut values: Vec<T> = nodes.iter().map(|&r| f(r)).collect();
        values[0] = T::zero();
        values[count - 1] = T::zero();
        Self::new(nodes, values)
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

fn natural_spline<T: Real>(x: &[T], y: &[T]) -> Vec<T> {
    let m = x.len();
    let mut c = vec![T::zero(); m];
    let mut d = vec![T::zero(); m];
    let two = T::lit(2.0);
    let six = T::lit(6.0);
    for i in 1..m - 1 {
        let h0 = x[i] - x[i - 1];
        let h1 = x[i + 1] - x[i];
        let rhs = six * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        let diag = two * (h0 + h1) - h0 * c[i - 1];
        c[i] = h1 / diag;
        d[i] = (rhs - h0 * d[i - 1]) / diag;
    }
    let mut out = vec![T::zero(); m];
    for i in (1..m - 1).rev() {
        out[i] = d[i] - c[i] * out[i + 1];
    }
    out
}

impl<T: Real> RadialSpectrum<T> for RadialProfile<T> {
    fn value(&self, r: T) -> T {
        let x = &self.nodes;
        let last = x.len() - 1;
        if r <= x[0] || r >= x[last] {
            return T::zero();
        }
        let i = x.partition_point(|&v| v <= r).clamp(1, last) - 1;
        let h = x[i + 1] - x[i];
        let a = (x[i + 1] - r) / h;
        let b = (r - x[i]) / h;
        let six = T::lit(6.0);
        a * self.values[i]
            + b * self.values[i + 1]
            + ((a * a * a - a) * self.second[i] + (b * b * b - b) * self.second[i + 1]) * h * h / six
    }

    fn support(&self) -> (T, T) {
        (self.nodes[0], self.nodes[self.nodes.len() - 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bump_shape() {
        let b = AnnulusBump::new(1.0_f64, 3.0, 2.0).unwrap();
        assert_eq!(b.value(2.0), 2.0);
        assert_eq!(b.value(1.0), 0.0);
        assert_eq!(b.value(3.5), 0.0);
        assert!(AnnulusBump::new(0.0_f64, 1.0, 1.0).is_err());
    }

    #[test]
    fn spline_reproduces_smooth_profile() {
        let bump = AnnulusBump::new(1.0_f64, 3.0, 1.0).unwrap();
        let p = RadialProfile::sample(1.0, 3.0, 801, |r| bump.value(r)).unwrap();
        for k in 0..100 {
            let r = 1.0 + 2.0 * (k as f64 + 0.37) / 100.0;
            assert!((p.value(r) - bump.value(r)).abs() < 1e-6);
        }
        assert!(RadialProfile::new(vec![1.0, 2.0, 3.0], vec![1.0, 1.0, 0.0]).is_err());
        assert!(RadialProfile::new(vec![1.0, 1.0, 3.0], vec![0.0, 1.0, 0.0]).is_err());
    }
}
