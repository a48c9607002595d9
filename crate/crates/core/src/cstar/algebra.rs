//! *-subalgebras of `C*_r(G)` for finite `G`, their minimal ideals, and ideal
//! detection.
//!
//! Elements are kept as functions on `G` (the vector `j(a)`), with the
//! convolution product; `j` is injective on the model, so this is the same
//! algebra as the matrices, on `|G|` coordinates instead of `|G|²`.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::rep::{convolve, involution, rep_function, unit_function, C64};
use super::CstarError;
use crate::groupoid::FiniteGroupoid;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlgebraOptions {
    pub tolerance: f64,
    pub dim_cap: usize,
    pub seed: u64,
}

impl Default for AlgebraOptions {
    fn default() -> Self {
        AlgebraOptions { tolerance: 1e-9, dim_cap: 4096, seed: 0x5eed }
    }
}

impl AlgebraOptions {
    /// Rank and membership decisions use this multiple of the tolerance.
    fn rank_tol(&self) -> f64 {
        self.tolerance * 1e3
    }
}

fn zero(n: usize) -> Vec<C64> {
    vec![C64::new(0.0, 0.0); n]
}

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(y: &mut [C64], a: C64, x: &[C64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn scale(x: &[C64], a: C64) -> Vec<C64> {
    x.iter().map(|z| z * a).collect()
}

/// An orthonormal basis (in `ℓ²(G)` coordinates) of a subspace of functions.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Span {
    basis: Vec<Vec<C64>>,
}

impl Span {
    pub fn residual(&self, v: &[C64]) -> Vec<C64> {
        let mut r = v.to_vec();
        for _ in 0..2 {
            for b in &self.basis {
                let c = inner(b, &r);
                axpy(&mut r, -c, b);
            }
        }
        r
    }

    pub fn distance(&self, v: &[C64]) -> f64 {
        norm(&self.residual(v))
    }

    /// Adds the direction of `v` if it is not already in the span.
    pub fn try_add(&mut self, v: &[C64], tol: f64) -> bool {
        let r = self.residual(v);
        let nr = norm(&r);
        if nr <= tol * norm(v).max(1.0) {
            return false;
        }
        self.basis.push(scale(&r, C64::new(1.0 / nr, 0.0)));
        true
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<C64>] {
        &self.basis
    }
}

/// A *-subalgebra, by orthonormal spanning functions.
#[derive(Debug, Clone, PartialEq)]
pub struct SubalgebraBasis {
    span: Span,
    size: usize,
}

impl SubalgebraBasis {
    pub fn dimension(&self) -> usize {
        self.span.len()
    }

    /// `|G|`, the length of each function.
    pub fn ambient(&self) -> usize {
        self.size
    }

    pub fn basis(&self) -> &[Vec<C64>] {
        self.span.vectors()
    }

    pub fn distance(&self, v: &[C64]) -> f64 {
        self.span.distance(v)
    }

    /// The span of indicator or other functions, without closure.
    pub fn span_of(size: usize, vectors: &[Vec<C64>], tol: f64) -> Self {
        let mut span = Span::default();
        for v in vectors {
            span.try_add(v, tol);
        }
        SubalgebraBasis { span, size }
    }
}

/// The smallest subspace containing the generators that is closed under
/// convolution and involution.
pub fn star_closure(g: &FiniteGroupoid, gens: &[Vec<C64>], opts: &AlgebraOptions) -> Result<SubalgebraBasis, CstarError> {
    let n = g.len();
    if gens.iter().any(|f| f.len() != n) {
        return Err(CstarError::Shape("generator length differs from |G|".into()));
    }
    let tol = opts.rank_tol();
    let mut span = Span::default();
    for f in gens {
        span.try_add(f, tol);
        span.try_add(&involution(g, f), tol);
    }
    let mut done = 0;
    loop {
        let k = span.len();
        if k > opts.dim_cap {
            return Err(CstarError::DimensionCap(opts.dim_cap));
        }
        if done == k {
            break;
        }
        for i in 0..k {
            for j in 0..k {
                if i < done && j < done {
                    continue;
                }
                let (bi, bj) = (span.basis[i].clone(), span.basis[j].clone());
                let p = convolve(g, &bi, &bj);
                if span.try_add(&p, tol) {
                    let last = span.basis.last().unwrap().clone();
                    span.try_add(&involution(g, &last), tol);
                }
            }
        }
        done = k;
    }
    Ok(SubalgebraBasis { span, size: n })
}

/// A minimal two-sided ideal `L = pA` with its central projection `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub projection: Vec<C64>,
    pub ideal: SubalgebraBasis,
}

/// Basis of the center: the null space of `c ↦ ([z_c, b_j])_j`, read off the
/// Gram matrix of the commutator map (eigenvalues are squared singular
/// values).
fn center(g: &FiniteGroupoid, a: &SubalgebraBasis, opts: &AlgebraOptions) -> Vec<Vec<C64>> {
    let d = a.dimension();
    let n = g.len();
    if d == 0 {
        return Vec::new();
    }
    // commutators[i][j] = [b_i, b_j]
    let commutators: Vec<Vec<Vec<C64>>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let (bi, bj) = (&a.basis()[i], &a.basis()[j]);
                    let ab = convolve(g, bi, bj);
                    let ba = convolve(g, bj, bi);
                    ab.iter().zip(&ba).map(|(x, y)| x - y).collect()
                })
                .collect()
        })
        .collect();
    let mut gram = DMatrix::<C64>::zeros(d, d);
    for i in 0..d {
        for k in i..d {
            let v: C64 = (0..d).map(|j| inner(&commutators[i][j], &commutators[k][j])).sum();
            gram[(i, k)] = v;
            gram[(k, i)] = v.conj();
        }
    }
    let eig = SymmetricEigen::new(gram);
    let max_ev = eig.eigenvalues.iter().cloned().fold(0.0, f64::max).max(1.0);
    // Eigenvalues below the roundoff floor of the Gram matrix count as zero,
    // whatever the tolerance.
    let cut = opts.rank_tol().powi(2).max(64.0 * f64::EPSILON) * max_ev;
    let mut out = Span::default();
    for (k, &ev) in eig.eigenvalues.iter().enumerate() {
        if ev <= cut {
            let mut z = zero(n);
            for i in 0..d {
                axpy(&mut z, eig.eigenvectors[(i, k)], &a.basis()[i]);
            }
            out.try_add(&z, opts.rank_tol());
        }
    }
    out.basis
}

fn split_center(
    g: &FiniteGroupoid,
    a: &SubalgebraBasis,
    zs: &[Vec<C64>],
    seed: u64,
    opts: &AlgebraOptions,
) -> Option<Vec<Vec<C64>>> {
    let n = g.len();
    let tol = opts.rank_tol();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Self-adjoint parts of the central basis, combined with rational weights.
    let mut h = zero(n);
    for z in zs {
        let zs = involution(g, z);
        let re: Vec<C64> = z.iter().zip(&zs).map(|(x, y)| (x + y) * 0.5).collect();
        let im: Vec<C64> = z.iter().zip(&zs).map(|(x, y)| (x - y) * C64::new(0.0, -0.5)).collect();
        for part in [re, im] {
            let w = rng.random_range(1..=96) as f64 / 97.0;
            axpy(&mut h, C64::new(w, 0.0), &part);
        }
    }
    let hm = rep_function(g, &h).0;
    let herm = (&hm + hm.adjoint()) * C64::new(0.5, 0.0);
    let mut eig: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().cloned().collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let spread = eig.iter().map(|x| x.abs()).fold(1.0, f64::max);
    let mut distinct: Vec<f64> = Vec::new();
    for x in eig {
        match distinct.last() {
            Some(&l) if (x - l).abs() <= tol * spread => {}
            _ => distinct.push(x),
        }
    }
    let one = unit_function(g);
    let mut projections = Vec::new();
    for (i, &l) in distinct.iter().enumerate() {
        let mut p = one.clone();
        for (j, &mu) in distinct.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut factor = h.clone();
            axpy(&mut factor, C64::new(-mu, 0.0), &one);
            p = scale(&convolve(g, &p, &factor), C64::new(1.0 / (l - mu), 0.0));
        }
        if norm(&p) > tol && a.distance(&p) <= tol * norm(&p).max(1.0) {
            projections.push(p);
        }
    }
    // Validate: orthogonal central idempotents, summing to the unit of A,
    // each cutting the center down to one dimension.
    if projections.len() != zs.len() {
        return None;
    }
    let close = |x: &[C64], y: &[C64]| norm(&x.iter().zip(y).map(|(a, b)| a - b).collect::<Vec<_>>()) <= tol * norm(y).max(1.0);
    for (i, p) in projections.iter().enumerate() {
        if !close(&convolve(g, p, p), p) || !close(&involution(g, p), p) {
            return None;
        }
        for q in projections.iter().skip(i + 1) {
            if norm(&convolve(g, p, q)) > tol {
                return None;
            }
        }
        let pz = SubalgebraBasis::span_of(n, &zs.iter().map(|z| convolve(g, p, z)).collect::<Vec<_>>(), tol);
        if pz.dimension() != 1 {
            return None;
        }
    }
    let mut sum = zero(n);
    for p in &projections {
        axpy(&mut sum, C64::new(1.0, 0.0), p);
    }
    for b in a.basis() {
        if !close(&convolve(g, &sum, b), b) {
            return None;
        }
    }
    Some(projections)
}

/// Minimal ideals via the minimal central projections, from the spectral
/// split of a generic self-adjoint central element.
pub fn minimal_ideal_blocks(g: &FiniteGroupoid, a: &SubalgebraBasis, opts: &AlgebraOptions) -> Result<Vec<Block>, CstarError> {
    if a.dimension() == 0 {
        return Ok(Vec::new());
    }
    let zs = center(g, a, opts);
    let projections = split_center(g, a, &zs, opts.seed, opts)
        .or_else(|| split_center(g, a, &zs, opts.seed ^ 0x9e37_79b9_7f4a_7c15, opts))
        .ok_or(CstarError::Degenerate(opts.tolerance))?;
    let tol = opts.rank_tol();
    Ok(projections
        .into_iter()
        .map(|p| {
            let vs: Vec<Vec<C64>> = a.basis().iter().map(|b| convolve(g, &p, b)).collect();
            Block { ideal: SubalgebraBasis::span_of(g.len(), &vs, tol), projection: p }
        })
        .collect())
}

/// `dim(L ∩ B) = dim L + dim B − dim(L + B)`.
pub fn intersection_dimension(l: &SubalgebraBasis, b: &SubalgebraBasis, tol: f64) -> usize {
    let mut span = Span::default();
    for v in l.basis().iter().chain(b.basis()) {
        span.try_add(v, tol);
    }
    (l.dimension() + b.dimension()).saturating_sub(span.len())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Detection {
    pub detects: bool,
    /// Index of a minimal ideal meeting `B` trivially.
    pub certificate: Option<usize>,
    pub algebra_dimension: usize,
    pub subalgebra_dimension: usize,
    pub block_dimensions: Vec<usize>,
    pub intersection_dimensions: Vec<usize>,
    /// Same verdict and dimensions at a tenth of the tolerance.
    pub stable: bool,
}

fn detect_once(g: &FiniteGroupoid, a: &SubalgebraBasis, b: &SubalgebraBasis, opts: &AlgebraOptions) -> Result<Detection, CstarError> {
    let tol = opts.rank_tol();
    let worst = b.basis().iter().map(|v| a.distance(v)).fold(0.0, f64::max);
    if worst > tol {
        return Err(CstarError::NotContained(worst));
    }
    let blocks = minimal_ideal_blocks(g, a, opts)?;
    let inter: Vec<usize> = blocks.iter().map(|bl| intersection_dimension(&bl.ideal, b, tol)).collect();
    let certificate = inter.iter().position(|&d| d == 0);
    Ok(Detection {
        detects: certificate.is_none(),
        certificate,
        algebra_dimension: a.dimension(),
        subalgebra_dimension: b.dimension(),
        block_dimensions: blocks.iter().map(|bl| bl.ideal.dimension()).collect(),
        intersection_dimensions: inter,
        stable: true,
    })
}

/// Whether every minimal ideal of `A` meets `B ⊆ A`. Every nonzero ideal of a
/// finite-dimensional C*-algebra contains a minimal one, so this decides
/// whether `B` detects ideals.
pub fn detects_ideals(g: &FiniteGroupoid, a: &SubalgebraBasis, b: &SubalgebraBasis, opts: &AlgebraOptions) -> Result<Detection, CstarError> {
    let mut d = detect_once(g, a, b, opts)?;
    let fine = AlgebraOptions { tolerance: opts.tolerance / 10.0, ..*opts };
    d.stable = match detect_once(g, a, b, &fine) {
        Ok(e) => e.detects == d.detects && e.block_dimensions == d.block_dimensions && e.intersection_dimensions == d.intersection_dimensions,
        Err(_) => false,
    };
    Ok(d)
}

/// Span of point masses `δ_h` for `h` in a subset, i.e. `C*_r(H)` for an
/// open subgroupoid `H` of a finite groupoid.
pub fn point_mass_span(g: &FiniteGroupoid, subset: &[usize], opts: &AlgebraOptions) -> SubalgebraBasis {
    let vs: Vec<Vec<C64>> = subset
        .iter()
        .map(|&h| {
            let mut f = zero(g.len());
            f[h] = C64::new(1.0, 0.0);
            f
        })
        .collect();
    SubalgebraBasis::span_of(g.len(), &vs, opts.rank_tol())
}

/// The sum of the given blocks as one subspace.
pub fn ideal_sum(g: &FiniteGroupoid, blocks: &[&Block], opts: &AlgebraOptions) -> SubalgebraBasis {
    let vs: Vec<Vec<C64>> = blocks.iter().flat_map(|b| b.ideal.basis().iter().cloned()).collect();
    SubalgebraBasis::span_of(g.len(), &vs, opts.rank_tol())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::rep::indicator;

    fn groupoid(n: usize, group: &[Vec<usize>]) -> FiniteGroupoid {
        FiniteGroupoid::pair_times_group(n, group).unwrap()
    }

    fn everything(g: &FiniteGroupoid) -> Vec<Vec<C64>> {
        (0..g.len()).map(|a| indicator(g, &[a])).collect()
    }

    #[test]
    fn identity_generates_dimension_one() {
        let g = groupoid(2, &[vec![0]]);
        let a = star_closure(&g, &[unit_function(&g)], &AlgebraOptions::default()).unwrap();
        assert_eq!(a.dimension(), 1);
    }

    #[test]
    fn full_matrix_algebra_has_one_block() {
        let g = groupoid(2, &[vec![0]]);
        let opts = AlgebraOptions::default();
        let a = star_closure(&g, &everything(&g), &opts).unwrap();
        assert_eq!(a.dimension(), 4);
        assert_eq!(minimal_ideal_blocks(&g, &a, &opts).unwrap().len(), 1);
    }

    #[test]
    fn group_algebra_of_z2_has_two_blocks() {
        let g = groupoid(1, &[vec![0, 1], vec![1, 0]]);
        let opts = AlgebraOptions::default();
        let a = star_closure(&g, &everything(&g), &opts).unwrap();
        let blocks = minimal_ideal_blocks(&g, &a, &opts).unwrap();
        assert_eq!(blocks.len(), 2);
        for b in &blocks {
            // (1 ± g)/2
            assert!((b.projection[0].re - 0.5).abs() < 1e-9);
            assert!((b.projection[1].re.abs() - 0.5).abs() < 1e-9);
        }
        let unit = SubalgebraBasis::span_of(2, &[unit_function(&g)], 1e-6);
        let d = detects_ideals(&g, &a, &unit, &opts).unwrap();
        assert!(!d.detects && d.certificate.is_some() && d.stable);
        assert!(detects_ideals(&g, &a, &a, &opts).unwrap().detects);
    }

    #[test]
    fn direct_sum_of_two_full_blocks() {
        let g = FiniteGroupoid::disjoint_union(&[groupoid(2, &[vec![0]]), groupoid(2, &[vec![0]])]).unwrap();
        let opts = AlgebraOptions::default();
        let a = star_closure(&g, &everything(&g), &opts).unwrap();
        let blocks = minimal_ideal_blocks(&g, &a, &opts).unwrap();
        assert_eq!(blocks.iter().map(|b| b.ideal.dimension()).collect::<Vec<_>>(), vec![4, 4]);
    }

    #[test]
    fn s3_group_algebra() {
        // S3 as permutations of {0,1,2}; ℂS3 ≅ ℂ ⊕ ℂ ⊕ M_2.
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| perms.iter().map(|q| idx([p[q[0]], p[q[1]], p[q[2]]])).collect())
            .collect();
        let g = groupoid(1, &table);
        let opts = AlgebraOptions::default();
        let a = star_closure(&g, &everything(&g), &opts).unwrap();
        let mut dims: Vec<usize> = minimal_ideal_blocks(&g, &a, &opts).unwrap().iter().map(|b| b.ideal.dimension()).collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 4]);
    }
}
