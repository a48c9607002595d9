//! Exhaustive checks of the structural lemmas on concrete instances.
//!
//! Every check enumerates all applicable configurations of one instance and
//! records counterexamples instead of panicking.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::category::{Lcsc, MorphismId};
use crate::cstar::algebra::{ideal_sum, intersection_dimension, point_mass_span};
use crate::cstar::rep::{conditional_expectation, j_map, rep_function, to_function, OperatorMatrix, C64};
use crate::error::Result;
use crate::fixtures;
use crate::hull::{Hull, InverseSemigroup};
use crate::model::{Model, PipelineOptions, Subalgebra};
use crate::pbij::PartialBij;
use crate::random::{self, Instance};
use crate::semilattice::Semilattice;
use crate::spectrum::{
    enumerate_filters, is_prime, is_prime_by_unions, tightness_census, union_relations, Filter,
};
use crate::tight::{
    compute_f_lambda, isotropy_check, siso_algebraic, siso_by_fixing, siso_by_pairs,
};

/// Failures kept per check; the count is still exact.
const MAX_REPORTED: usize = 10;
/// Compatible pairs tried per abstract semigroup.
const PAIR_BUDGET: usize = 300;
/// Groupoids above this size skip the floating-point checks.
const FLOATING_LIMIT: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Arithmetic {
    Exact,
    Floating,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub arithmetic: Arithmetic,
    /// Instances on which the check applied.
    pub instances: usize,
    pub checked: usize,
    pub failure_count: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub passed: bool,
    pub seed: Option<u64>,
    pub instances: Vec<String>,
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn check(&self, name: &str) -> Option<&LemmaCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Default)]
pub struct Suite {
    checks: BTreeMap<&'static str, LemmaCheck>,
    order: Vec<&'static str>,
    instance: String,
    instances: Vec<String>,
}

impl Suite {
    pub fn new() -> Self {
        Self::default()
    }

    fn entry(&mut self, name: &'static str, arithmetic: Arithmetic) -> &mut LemmaCheck {
        if !self.checks.contains_key(name) {
            self.order.push(name);
        }
        self.checks.entry(name).or_insert(LemmaCheck {
            name,
            arithmetic,
            instances: 0,
            checked: 0,
            failure_count: 0,
            failures: Vec::new(),
        })
    }

    fn begin(&mut self, instance: &str) {
        self.instance = instance.to_string();
        self.instances.push(instance.to_string());
    }

    /// Marks the check as applicable to the current instance.
    fn applies(&mut self, name: &'static str, arithmetic: Arithmetic) {
        self.entry(name, arithmetic).instances += 1;
    }

    fn record(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let instance = self.instance.clone();
        let c = self.entry(name, Arithmetic::Exact);
        c.checked += 1;
        if !ok {
            c.failure_count += 1;
            if c.failures.len() < MAX_REPORTED {
                c.failures.push(format!("{instance}: {}", detail()));
            }
        }
    }

    pub fn finish(self, seed: Option<u64>) -> LemmaReport {
        let checks: Vec<LemmaCheck> = self.order.iter().map(|n| self.checks[n].clone()).collect();
        LemmaReport { passed: checks.iter().all(|c| c.failure_count == 0), seed, instances: self.instances, checks }
    }

    /// Every exact lemma applicable to a category, plus the floating-point
    /// ones when the tight groupoid is small.
    pub fn category(&mut self, label: &str, cat: &Lcsc, options: &PipelineOptions) -> Result<()> {
        self.begin(label);
        core_properties(self, cat);
        if !cat.validate(false).passed {
            return Ok(());
        }
        let hull = Hull::generate(cat, options.cap)?;
        let Some(tight) = semigroup_lemmas(self, hull.semigroup()) else {
            return Ok(());
        };
        hull_lemmas(self, &hull, &tight);
        let g_len = crate::tight::TightGroupoid::build(hull.semigroup(), &tight)?.len();
        if g_len <= FLOATING_LIMIT {
            let model = Model::build(cat, options)?;
            floating_lemmas(self, &model)?;
        }
        Ok(())
    }

    pub fn semigroup(&mut self, label: &str, s: &InverseSemigroup) {
        self.begin(label);
        semigroup_lemmas(self, s);
        let elements: Vec<&PartialBij> = s.elements().iter().collect();
        let mut tried = 0;
        'outer: for i in 1..s.len() {
            for j in i + 1..s.len() {
                if tried >= PAIR_BUDGET {
                    break 'outer;
                }
                if s.is_compatible(i, j) {
                    tried += 1;
                    order_wedge(self, s, &[elements[i], elements[j]]);
                }
            }
        }
    }

    pub fn semilattice(&mut self, label: &str, e: &Semilattice) {
        self.begin(label);
        semilattice_lemmas(self, e);
    }
}

/// Tight filters of the semilattice, with all tightness oracles compared.
fn semilattice_lemmas(suite: &mut Suite, e: &Semilattice) -> Option<Vec<Filter>> {
    suite.applies("tightness_oracles", Arithmetic::Exact);
    let census = match tightness_census(e) {
        Ok(c) => c,
        Err(err) => {
            suite.record("tightness_oracles", false, || err.to_string());
            return None;
        }
    };
    suite.record("tightness_oracles", census.literal_checked || e.len() > crate::spectrum::LITERAL_LIMIT, || {
        "literal criterion skipped".into()
    });
    if let Ok(joins) = union_relations(e) {
        suite.applies("prime_and_tight", Arithmetic::Exact);
        let boolean = e.is_boolean();
        for xi in enumerate_filters(e) {
            let prime = is_prime(e, xi, &joins);
            let tight = census.tight.contains(&xi);
            suite.record("prime_and_tight", prime == is_prime_by_unions(e, xi), || {
                format!("prime oracles differ at filter {}", xi.minimum())
            });
            suite.record("prime_and_tight", !tight || prime, || format!("tight filter {} is not prime", xi.minimum()));
            if boolean {
                suite.record("prime_and_tight", !prime || tight, || {
                    format!("prime filter {} is not tight", xi.minimum())
                });
            }
        }
    }
    Some(census.tight)
}

fn semigroup_lemmas(suite: &mut Suite, s: &InverseSemigroup) -> Option<Vec<Filter>> {
    let tight = semilattice_lemmas(suite, s.semilattice())?;
    suite.applies("siso_characterizations", Arithmetic::Exact);
    let alg = siso_algebraic(s);
    let fix = siso_by_fixing(s, &tight);
    for i in 0..s.len() {
        suite.record("siso_characterizations", alg.contains(&i) == fix.contains(&i), || {
            format!("element {i}: algebraic {}, fixing {}", alg.contains(&i), fix.contains(&i))
        });
    }
    Some(tight)
}

fn join_or_zero(n: usize, parts: &[PartialBij]) -> Option<PartialBij> {
    let nonzero: Vec<PartialBij> = parts.iter().filter(|p| !p.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return Some(PartialBij::zero(n));
    }
    PartialBij::union_join(&nonzero).ok()
}

/// For `s = ⋁A`: `ses* = aea*` when `e ≤ a*a`, and `t*st = t*at` when
/// `tt* ≤ aa*`, for `a ∈ A`.
fn order_wedge(suite: &mut Suite, s: &InverseSemigroup, family: &[&PartialBij]) {
    const NAME: &str = "order_and_joins";
    suite.applies(NAME, Arithmetic::Exact);
    let n = s.universe();
    let owned: Vec<PartialBij> = family.iter().map(|&p| p.clone()).collect();
    let Some(join) = join_or_zero(n, &owned) else {
        suite.record(NAME, false, || format!("{family:?} has no join"));
        return;
    };
    let join_inv = join.inverse();
    let idempotents: Vec<&PartialBij> = s.idempotents().iter().map(|&i| s.element(i)).collect();
    for a in family {
        let (ai, src, rng) = (a.inverse(), a.inverse().compose(a), a.compose(&a.inverse()));
        for e in &idempotents {
            if !e.natural_leq(&src) {
                continue;
            }
            let lhs = join.compose(e).compose(&join_inv);
            let rhs = a.compose(e).compose(&ai);
            suite.record(NAME, lhs == rhs, || format!("s e s* ≠ a e a* for a = {a:?}, e = {e:?}"));
        }
        for t in s.elements() {
            let tt = t.compose(&t.inverse());
            if !tt.natural_leq(&rng) {
                continue;
            }
            let ti = t.inverse();
            let lhs = ti.compose(&join).compose(t);
            let rhs = ti.compose(a).compose(t);
            suite.record(NAME, lhs == rhs, || format!("t* s t ≠ t* a t for a = {a:?}, t = {t:?}"));
        }
    }
}

fn d_set(e: &Semilattice, tight: &[Filter], idem: usize) -> BTreeSet<usize> {
    tight.iter().enumerate().filter(|(_, xi)| xi.contains(e, idem)).map(|(k, _)| k).collect()
}

fn hull_lemmas(suite: &mut Suite, hull: &Hull, tight: &[Filter]) {
    let s = hull.semigroup();
    let cat = hull.category();
    let e = s.semilattice();
    let n = s.universe();
    let pieces: Vec<Vec<(MorphismId, MorphismId)>> = (0..s.len()).map(|i| hull.decompose_index(i)).collect();
    let piece_maps = |i: usize| -> Vec<PartialBij> {
        pieces[i].iter().map(|&(a, b)| s.element(hull.basic(a, b)).clone()).collect()
    };

    // The canonical decomposition as a compatible family.
    for i in 1..s.len() {
        let maps = piece_maps(i);
        let refs: Vec<&PartialBij> = maps.iter().collect();
        order_wedge(suite, s, &refs);
    }

    suite.applies("distributes_over_unions", Arithmetic::Exact);
    for i in 0..s.len() {
        let maps = piece_maps(i);
        let whole = s.element(i);
        for t in s.elements() {
            let left: Vec<PartialBij> = maps.iter().map(|p| t.compose(p)).collect();
            let right: Vec<PartialBij> = maps.iter().map(|p| p.compose(t)).collect();
            suite.record("distributes_over_unions", join_or_zero(n, &left).as_ref() == Some(&t.compose(whole)), || {
                format!("t·⋃ ≠ ⋃ t· at element {i}")
            });
            suite.record("distributes_over_unions", join_or_zero(n, &right).as_ref() == Some(&whole.compose(t)), || {
                format!("⋃·t ≠ ⋃ ·t at element {i}")
            });
        }
    }

    suite.applies("tight_union_pieces", Arithmetic::Exact);
    for &i in s.idempotents() {
        let x = s.as_idempotent(i).unwrap();
        for xi in tight.iter().filter(|xi| xi.contains(e, x)) {
            let hit = pieces[i].iter().any(|&(a, _)| xi.contains(e, hull.ideal_idempotent(a)));
            suite.record("tight_union_pieces", hit, || format!("tight filter {} misses every piece of {i}", xi.minimum()));
        }
    }

    suite.applies("siso_characterizations", Arithmetic::Exact);
    let alg = siso_algebraic(s);
    let pairs = siso_by_pairs(hull);
    for i in 0..s.len() {
        suite.record("siso_characterizations", alg.contains(&i) == pairs.contains(&i), || {
            format!("element {i}: algebraic {}, pair criterion {}", alg.contains(&i), pairs.contains(&i))
        });
        let piecewise = pieces[i].iter().all(|&(a, b)| alg.contains(&hull.basic(a, b)));
        suite.record("siso_characterizations", piecewise == alg.contains(&i), || {
            format!("element {i}: union and pieces disagree")
        });
    }

    suite.applies("exhaustive_part_closure", Arithmetic::Exact);
    let f_lambda = match compute_f_lambda(hull, &alg) {
        Ok(f) => {
            suite.record("exhaustive_part_closure", true, String::new);
            f
        }
        Err(err) => {
            suite.record("exhaustive_part_closure", false, || err.to_string());
            let mut f = BTreeSet::from([0]);
            for &i in &alg {
                let (ax, bx): (Vec<_>, Vec<_>) = pieces[i].iter().copied().unzip();
                if cat.is_exhaustive_family(&ax) && cat.is_exhaustive_family(&bx) {
                    f.insert(i);
                }
            }
            f
        }
    };

    suite.applies("isotropy_pair_domains", Arithmetic::Exact);
    suite.applies("isotropy_compression", Arithmetic::Exact);
    for ((a, b), el) in hull.pairs() {
        if !alg.contains(&el) {
            continue;
        }
        let witness = cat.alignment_witness(a, b).expect("valid ids");
        let da = d_set(e, tight, hull.ideal_idempotent(a));
        let db = d_set(e, tight, hull.ideal_idempotent(b));
        let dw: BTreeSet<usize> = witness.iter().flat_map(|&g| d_set(e, tight, hull.ideal_idempotent(g))).collect();
        suite.record("isotropy_pair_domains", da == db && db == dw, || {
            format!("domains differ for ({}, {})", cat.name(a), cat.name(b))
        });
        for g in cat.morphisms() {
            if cat.meets(g, a) || cat.meets(g, b) {
                suite.record("isotropy_pair_domains", witness.iter().any(|&w| cat.meets(g, w)), || {
                    format!("{} meets ({}, {}) but no witness", cat.name(g), cat.name(a), cat.name(b))
                });
            }
        }
        for &d in cat.ideal(a).intersection(cat.ideal(b)) {
            let gd = hull.generator(d);
            let c = s.product_all(&[s.inverse(gd), el, gd]);
            suite.record("isotropy_compression", f_lambda.contains(&c), || {
                format!("δ*αβ*δ ∉ F for α = {}, β = {}, δ = {}", cat.name(a), cat.name(b), cat.name(d))
            });
        }
    }

    if hull.is_singly_aligned() {
        hull_form(suite, hull);
    }
}

/// The closed-form product and the equality criterion for singly aligned
/// categories.
fn hull_form(suite: &mut Suite, hull: &Hull) {
    const NAME: &str = "singly_aligned_products";
    suite.applies(NAME, Arithmetic::Exact);
    let s = hull.semigroup();
    let cat = hull.category();
    let covered: BTreeSet<usize> = hull.pairs().map(|(_, el)| el).collect();
    for i in 1..s.len() {
        suite.record(NAME, covered.contains(&i), || format!("element {i} is not a single αβ*"));
    }
    let inv = cat.invertibles();
    let pairs: Vec<((MorphismId, MorphismId), usize)> = hull.pairs().collect();
    for &((a, b), p) in &pairs {
        for &((g, t), q) in &pairs {
            let extensional = s.product(p, q);
            let closed = match cat.alignment_witness(b, g).expect("valid ids").first() {
                None => 0,
                Some(&rho) => {
                    let b1 = cat.left_quotient(b, rho).expect("ρ ∈ βΛ");
                    let g1 = cat.left_quotient(g, rho).expect("ρ ∈ γΛ");
                    match (cat.compose(a, b1), cat.compose(t, g1)) {
                        (Some(l), Some(r)) => hull.basic(l, r),
                        _ => usize::MAX,
                    }
                }
            };
            suite.record(NAME, closed == extensional, || {
                format!("{}{}*·{}{}* closed form disagrees", cat.name(a), cat.name(b), cat.name(g), cat.name(t))
            });
            let unit = inv.keys().any(|&u| cat.compose(a, u) == Some(g) && cat.compose(b, u) == Some(t));
            suite.record(NAME, (p == q) == unit, || {
                format!("equality of {}{}* and {}{}* vs invertible", cat.name(a), cat.name(b), cat.name(g), cat.name(t))
            });
        }
    }
}

fn core_properties(suite: &mut Suite, cat: &Lcsc) {
    const NAME: &str = "core_properties";
    if !cat.validate(false).passed {
        return;
    }
    suite.applies(NAME, Arithmetic::Exact);
    let core = cat.core();
    for &u in cat.invertibles().keys() {
        suite.record(NAME, core.contains(&u), || format!("invertible {} outside the core", cat.name(u)));
    }
    for a in cat.morphisms() {
        for b in cat.morphisms() {
            if let Some(ab) = cat.compose(a, b) {
                if core.contains(&a) && core.contains(&b) {
                    suite.record(NAME, core.contains(&ab), || format!("core not closed at {}·{}", cat.name(a), cat.name(b)));
                }
                if core.contains(&ab) {
                    suite.record(NAME, core.contains(&a) && core.contains(&b), || {
                        format!("{}·{} in the core but a factor is not", cat.name(a), cat.name(b))
                    });
                }
            }
            if core.contains(&a) && core.contains(&b) && cat.range(a) == cat.range(b) {
                let w = cat.alignment_witness(a, b).expect("valid ids");
                suite.record(NAME, cat.is_exhaustive(&w, cat.range(a)).unwrap_or(false), || {
                    format!("witnesses of {}, {} not exhaustive", cat.name(a), cat.name(b))
                });
                if cat.is_singly_aligned() {
                    suite.record(NAME, w.len() == 1 && core.contains(&w[0]), || {
                        format!("meet of {}, {} is not a core morphism", cat.name(a), cat.name(b))
                    });
                }
            }
        }
    }
}

/// Ideal intersection with the isotropy subgroupoid, core detection for
/// monoids, and sanity of the conditional expectation.
fn floating_lemmas(suite: &mut Suite, model: &Model) -> Result<()> {
    let g = model.groupoid();
    let opts = model.options.algebra;
    let tol = opts.tolerance * 1e3;
    let blocks = model.blocks()?;

    const CN: &str = "isotropy_meets_every_ideal";
    suite.applies(CN, Arithmetic::Floating);
    let h = model.tight.germs_of(&model.siso);
    let iso = isotropy_check(g, &h)?;
    suite.record(CN, iso.within_isotropy && iso.dense, || format!("{iso:?}"));
    let hv: Vec<usize> = h.iter().copied().collect();
    let hspan = point_mass_span(g, &hv, &opts);
    for mask in 1u64..(1 << blocks.len().min(16)) {
        let chosen: Vec<_> = blocks.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, b)| b).collect();
        let ideal = ideal_sum(g, &chosen, &opts);
        suite.record(CN, intersection_dimension(&ideal, &hspan, tol) > 0, || format!("ideal {mask:b} misses C*_r(H)"));
    }

    let cat = model.category();
    if cat.objects().len() == 1 && model.hull.is_singly_aligned() {
        const LCM: &str = "core_monoid_detection";
        suite.applies(LCM, Arithmetic::Floating);
        let v = model.detect(Subalgebra::Core)?;
        suite.record(LCM, v.detection.detects && v.detection.stable, || format!("{:?}", v.detection));
    }

    for &sub in &Subalgebra::DETECTABLE {
        let predicted = model.predicted(sub);
        if !predicted {
            continue;
        }
        const DET: &str = "predicted_detection";
        suite.applies(DET, Arithmetic::Floating);
        suite.applies("stable_verdicts", Arithmetic::Floating);
        let v = model.detect(sub)?;
        suite.record(DET, v.detection.detects, || format!("{sub} fails: {:?}", v.detection));
        suite.record("stable_verdicts", v.detection.stable, || format!("{sub} verdict changes at tolerance/10"));
    }

    for check in analysis(model, tol) {
        suite.applies(check.0, Arithmetic::Floating);
        for (ok, detail) in check.1 {
            suite.record(check.0, ok, || detail);
        }
    }
    Ok(())
}

type Outcomes = Vec<(bool, String)>;

/// Contractivity and faithfulness of `E_red` and injectivity of `j`, on the
/// operators `T_s` and fixed-seed combinations of them.
pub fn analysis(model: &Model, tol: f64) -> Vec<(&'static str, Outcomes)> {
    let g = model.groupoid();
    let n = model.hull.len();
    let mut samples: Vec<OperatorMatrix> = (0..n).map(|s| OperatorMatrix::from_exact(&model.t(s))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(model.options.algebra.seed);
    for _ in 0..8 {
        let mut f = vec![C64::new(0.0, 0.0); g.len()];
        for s in 0..n {
            let c = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            for (k, v) in model.t_function(s).into_iter().enumerate() {
                f[k] += c * v;
            }
        }
        samples.push(rep_function(g, &f));
    }
    let mut contractive = Vec::new();
    let mut faithful = Vec::new();
    let mut injective = Vec::new();
    for (k, a) in samples.iter().enumerate() {
        let norm = a.norm();
        let e = conditional_expectation(g, a);
        let sup = e.iter().map(|z| z.norm()).fold(0.0, f64::max);
        contractive.push((sup <= norm + tol, format!("sample {k}: ‖E(a)‖∞ = {sup} > ‖a‖ = {norm}")));
        let pos = a.adjoint().mul(a);
        let epos = conditional_expectation(g, &pos);
        let positive = epos.iter().all(|z| z.re >= -tol && z.im.abs() <= tol);
        let zero = epos.iter().all(|z| z.norm() <= tol);
        faithful.push((positive && (!zero || a.max_abs() <= tol), format!("sample {k}: E(a*a) = {epos:?}")));
        let back = to_function(g, a, tol).map(|f| rep_function(g, &f));
        let same = back.is_ok_and(|b| (&b.0 - &a.0).iter().all(|z| z.norm() <= tol));
        let nonzero = j_map(g, a).iter().any(|z| z.norm() > tol) || a.max_abs() <= tol;
        injective.push((same && nonzero, format!("sample {k}: j loses information")));
    }
    vec![("expectation_contractive", contractive), ("expectation_faithful", faithful), ("j_injective", injective)]
}

/// The suite over the fixtures.
pub fn verify_fixtures(options: &PipelineOptions) -> Result<LemmaReport> {
    let mut suite = Suite::new();
    for (name, cat) in fixtures::all() {
        suite.category(&format!("fixture {name}"), &cat, options)?;
    }
    Ok(suite.finish(None))
}

pub fn verify_category(label: &str, cat: &Lcsc, options: &PipelineOptions) -> Result<LemmaReport> {
    let mut suite = Suite::new();
    suite.category(label, cat, options)?;
    Ok(suite.finish(None))
}

/// The suite over the fixtures and `n` random instances.
pub fn verify_random(n: usize, seed: u64, options: &PipelineOptions) -> Result<LemmaReport> {
    let mut suite = Suite::new();
    for (name, cat) in fixtures::all() {
        suite.category(&format!("fixture {name}"), &cat, options)?;
    }
    for inst in random::instances(n, seed) {
        match &inst.instance {
            Instance::Category(c) => suite.category(&inst.name, c, options)?,
            Instance::Semigroup(s) => suite.semigroup(&inst.name, s),
            Instance::Semilattice(e) => suite.semilattice(&inst.name, e),
        }
    }
    Ok(suite.finish(Some(seed)))
}
