//! The regular representation of a finite groupoid on `ℓ²(G)` and the maps
//! `j` and `E_red`.

use nalgebra::{Complex, DMatrix};

use super::{CstarError, ExactMatrix};
use crate::groupoid::FiniteGroupoid;
use crate::tight::TightGroupoid;

pub type C64 = Complex<f64>;

/// A complex matrix on `ℓ²(G)`, basis `δ_γ` in element order.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix(pub DMatrix<C64>);

impl OperatorMatrix {
    pub fn from_exact(m: &ExactMatrix) -> Self {
        OperatorMatrix(m.0.map(|x| C64::new(x as f64, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn mul(&self, other: &OperatorMatrix) -> OperatorMatrix {
        OperatorMatrix(&self.0 * &other.0)
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix(self.0.adjoint())
    }

    /// Largest singular value.
    pub fn norm(&self) -> f64 {
        if self.dim() == 0 {
            return 0.0;
        }
        self.0.clone().svd(false, false).singular_values.iter().cloned().fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// `(⊕ₓ ρₓ)(f)`: entry `(αγ, γ) = f(α)` for composable `α, γ`.
pub fn rep_function(g: &FiniteGroupoid, f: &[C64]) -> OperatorMatrix {
    let n = g.len();
    let mut m = DMatrix::zeros(n, n);
    for a in 0..n {
        if f[a] == C64::new(0.0, 0.0) {
            continue;
        }
        for c in 0..n {
            if let Some(ac) = g.compose(a, c) {
                m[(ac, c)] += f[a];
            }
        }
    }
    OperatorMatrix(m)
}

/// The representation of the indicator of a bisection.
pub fn rep_indicator(g: &FiniteGroupoid, u: &[usize]) -> Result<ExactMatrix, CstarError> {
    g.check_bisection(u)?;
    let mut m = ExactMatrix::zeros(g.len());
    for &a in u {
        for c in 0..g.len() {
            if let Some(ac) = g.compose(a, c) {
                m.set(ac, c, 1);
            }
        }
    }
    Ok(m)
}

/// `T_s = 1_{[s, D_{s*s}]}`.
pub fn t_op(tg: &TightGroupoid, s: usize) -> ExactMatrix {
    rep_indicator(tg.groupoid(), &tg.bisection(s)).expect("germ sets of hull elements are bisections")
}

/// `j(a)(γ) = ⟨ρ_{d(γ)}(a) δ_{d(γ)}, δ_γ⟩`, the entry `(γ, d(γ))`.
pub fn j_map(g: &FiniteGroupoid, a: &OperatorMatrix) -> Vec<C64> {
    (0..g.len()).map(|c| a.0[(c, g.source(c))]).collect()
}

pub fn j_exact(g: &FiniteGroupoid, a: &ExactMatrix) -> Vec<i64> {
    (0..g.len()).map(|c| a.get(c, g.source(c))).collect()
}

/// `E_red(a)`: `j(a)` restricted to the units, in unit order.
pub fn conditional_expectation(g: &FiniteGroupoid, a: &OperatorMatrix) -> Vec<C64> {
    let f = j_map(g, a);
    g.units().iter().map(|&u| f[u]).collect()
}

/// `j` followed by the representation must give back `a`.
pub fn to_function(g: &FiniteGroupoid, a: &OperatorMatrix, tol: f64) -> Result<Vec<C64>, CstarError> {
    let f = j_map(g, a);
    let back = rep_function(g, &f);
    let residual = (&back.0 - &a.0).iter().map(|z| z.norm()).fold(0.0, f64::max);
    if residual > tol * a.max_abs().max(1.0) {
        return Err(CstarError::NotInModel(residual));
    }
    Ok(f)
}

/// `(f * h)(γ) = Σ_{αβ = γ} f(α) h(β)`.
pub fn convolve(g: &FiniteGroupoid, f: &[C64], h: &[C64]) -> Vec<C64> {
    let n = g.len();
    let mut out = vec![C64::new(0.0, 0.0); n];
    for a in 0..n {
        if f[a] == C64::new(0.0, 0.0) {
            continue;
        }
        for b in 0..n {
            if let Some(ab) = g.compose(a, b) {
                out[ab] += f[a] * h[b];
            }
        }
    }
    out
}

/// `f*(γ) = conj f(γ⁻¹)`.
pub fn involution(g: &FiniteGroupoid, f: &[C64]) -> Vec<C64> {
    (0..g.len()).map(|c| f[g.inverse(c)].conj()).collect()
}

pub fn unit_function(g: &FiniteGroupoid) -> Vec<C64> {
    let mut f = vec![C64::new(0.0, 0.0); g.len()];
    for &u in g.units() {
        f[u] = C64::new(1.0, 0.0);
    }
    f
}

pub fn indicator(g: &FiniteGroupoid, set: &[usize]) -> Vec<C64> {
    let mut f = vec![C64::new(0.0, 0.0); g.len()];
    for &a in set {
        f[a] = C64::new(1.0, 0.0);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hull::{Hull, DEFAULT_CAP};
    use crate::spectrum::tightness_census;

    fn fixture(cat: crate::category::Lcsc) -> (Hull, TightGroupoid) {
        let h = Hull::generate(&cat, DEFAULT_CAP).unwrap();
        let t = tightness_census(h.semigroup().semilattice()).unwrap().tight;
        let tg = TightGroupoid::build(h.semigroup(), &t).unwrap();
        (h, tg)
    }

    #[test]
    fn units_give_identity_and_empty_gives_zero() {
        let (_, tg) = fixture(fixtures::fixture_a());
        let g = tg.groupoid();
        assert_eq!(rep_indicator(g, g.units()).unwrap(), ExactMatrix::identity(4));
        assert!(rep_indicator(g, &[]).unwrap().is_zero());
    }

    #[test]
    fn arrow_is_a_partial_shift() {
        let (h, tg) = fixture(fixtures::fixture_a());
        let g = tg.groupoid();
        let arrow = tg.bisection(h.generator(2));
        assert_eq!(arrow.len(), 1);
        let gamma = arrow[0];
        let m = rep_indicator(g, &arrow).unwrap();
        // δ_{d(γ)} ↦ δ_γ and δ_{γ⁻¹} ↦ δ_{r(γ)}.
        assert_eq!(m.get(gamma, g.source(gamma)), 1);
        assert_eq!(m.get(g.range(gamma), g.inverse(gamma)), 1);
        assert_eq!(m.0.iter().sum::<i64>(), 2);
        let mut f = vec![C64::new(0.0, 0.0); 4];
        f[gamma] = C64::new(1.0, 0.0);
        let e = conditional_expectation(g, &OperatorMatrix::from_exact(&m));
        assert!(e.iter().all(|z| z.norm() == 0.0));
        assert_eq!(j_map(g, &OperatorMatrix::from_exact(&m)), f);
    }

    #[test]
    fn swap_on_z2() {
        let (h, tg) = fixture(fixtures::fixture_b());
        let m = t_op(&tg, h.generator(1));
        assert_eq!(m.0, DMatrix::from_row_slice(2, 2, &[0, 1, 1, 0]));
        assert!(t_op(&tg, 0).is_zero());
    }

    #[test]
    fn representation_is_multiplicative() {
        for (_, cat) in fixtures::all() {
            let (h, tg) = fixture(cat);
            let g = tg.groupoid();
            let s = h.semigroup();
            for i in 0..s.len() {
                let ti = t_op(&tg, i);
                assert_eq!(ti.adjoint(), t_op(&tg, s.inverse(i)));
                for k in 0..s.len() {
                    assert_eq!(ti.mul(&t_op(&tg, k)), t_op(&tg, s.product(i, k)));
                }
                let f = indicator(g, &tg.bisection(i));
                assert_eq!(j_exact(g, &ti).iter().map(|&x| x as f64).collect::<Vec<_>>(), f.iter().map(|z| z.re).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn convolution_matches_matrix_product() {
        let (_, tg) = fixture(fixtures::fixture_c());
        let g = tg.groupoid();
        let n = g.len();
        let f: Vec<C64> = (0..n).map(|i| C64::new(i as f64 * 0.5 - 1.0, (i % 3) as f64)).collect();
        let h: Vec<C64> = (0..n).map(|i| C64::new((i * i % 5) as f64, -(i as f64))).collect();
        let lhs = rep_function(g, &convolve(g, &f, &h));
        let rhs = rep_function(g, &f).mul(&rep_function(g, &h));
        assert!((&lhs.0 - &rhs.0).iter().all(|z| z.norm() < 1e-9));
        let adj = rep_function(g, &involution(g, &f));
        assert!((&adj.0 - &rep_function(g, &f).adjoint().0).iter().all(|z| z.norm() < 1e-12));
        assert_eq!(to_function(g, &rep_function(g, &f), 1e-9).unwrap(), f);
    }
}
