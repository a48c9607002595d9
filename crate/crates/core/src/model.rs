//! The full pipeline for one finite category: hull, spectrum, tight
//! groupoid, distinguished subsemigroups and the operator model.

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::category::{Lcsc, MorphismId};
use crate::cstar::algebra::{detects_ideals, star_closure, AlgebraOptions, Detection, SubalgebraBasis};
use crate::cstar::rep::{indicator, t_op, C64};
use crate::cstar::{minimal_ideal_blocks, Block, ExactMatrix};
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::hull::{Hull, DEFAULT_CAP};
use crate::spectrum::{enumerate_filters, tightness_census, Filter, TightnessCensus};
use crate::tight::{compute_f_lambda, compute_s_c, compute_siso, cycline_pairs, TightGroupoid};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PipelineOptions {
    pub cap: usize,
    pub algebra: AlgebraOptions,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { cap: DEFAULT_CAP, algebra: AlgebraOptions::default() }
    }
}

/// Generating sets for the subalgebras whose ideal detection is tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subalgebra {
    /// `T_e` for idempotents `e`.
    Diagonal,
    /// `T_s` for `s ∈ S^Iso`.
    Siso,
    /// `T_α` for `α` in the core.
    Core,
    /// `T_s` for `s ∈ F_Λ`.
    SisoCore,
    /// `T_α T_β*` for cycline pairs.
    Cycline,
    /// `T_s` for every hull element.
    Full,
}

impl Subalgebra {
    pub const DETECTABLE: [Subalgebra; 5] =
        [Subalgebra::Diagonal, Subalgebra::Siso, Subalgebra::Core, Subalgebra::SisoCore, Subalgebra::Cycline];

    pub fn name(self) -> &'static str {
        match self {
            Subalgebra::Diagonal => "diagonal",
            Subalgebra::Siso => "siso",
            Subalgebra::Core => "core",
            Subalgebra::SisoCore => "siso_core",
            Subalgebra::Cycline => "cycline",
            Subalgebra::Full => "full",
        }
    }
}

impl fmt::Display for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Subalgebra {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        [Subalgebra::Full].into_iter().chain(Subalgebra::DETECTABLE).find(|x| x.name() == s).ok_or_else(|| {
            format!("unknown subalgebra `{s}` (expected diagonal, siso, core, siso_core, cycline or full)")
        })
    }
}

/// A detection verdict with the statement it instantiates, if any.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubalgebraVerdict {
    pub subalgebra: Subalgebra,
    pub generators: usize,
    pub detection: Detection,
    /// Whether a known theorem predicts detection for this input.
    pub predicted: bool,
    pub provenance: &'static str,
    pub regime: &'static str,
}

pub const REGIME: &str = "finite Hausdorff regime";

#[derive(Debug, Clone)]
pub struct Model {
    pub hull: Hull,
    pub filters: Vec<Filter>,
    pub census: TightnessCensus,
    pub tight: TightGroupoid,
    pub siso: BTreeSet<usize>,
    pub f_lambda: BTreeSet<usize>,
    /// `None` unless singly aligned.
    pub s_c: Option<BTreeSet<usize>>,
    pub core: BTreeSet<MorphismId>,
    /// `None` without a valid degree map.
    pub cycline: Option<Vec<(MorphismId, MorphismId)>>,
    pub options: PipelineOptions,
    algebra: OnceCell<SubalgebraBasis>,
    blocks: OnceCell<Vec<Block>>,
}

impl Model {
    pub fn build(cat: &Lcsc, options: &PipelineOptions) -> Result<Self> {
        let report = cat.validate(false);
        if let Some(f) = report.failures.first() {
            return Err(Error::Invalid(format!("{:?} at {:?}: {}", f.axiom, f.witness, f.detail)));
        }
        let hull = Hull::generate(cat, options.cap)?;
        let e = hull.semigroup().semilattice();
        let filters = enumerate_filters(e);
        let census = tightness_census(e)?;
        let tight = TightGroupoid::build(hull.semigroup(), &census.tight)?;
        let siso = compute_siso(&hull, &census.tight)?;
        let f_lambda = compute_f_lambda(&hull, &siso)?;
        let s_c = if hull.is_singly_aligned() { Some(compute_s_c(&hull, &siso, &f_lambda)?) } else { None };
        let core = cat.core();
        let cycline = match cat.validate_degree() {
            Ok(r) if r.passed => Some(cycline_pairs(&hull, &siso)?),
            _ => None,
        };
        Ok(Model {
            hull,
            filters,
            census,
            tight,
            siso,
            f_lambda,
            s_c,
            core,
            cycline,
            options: *options,
            algebra: OnceCell::new(),
            blocks: OnceCell::new(),
        })
    }

    pub fn category(&self) -> &Lcsc {
        self.hull.category()
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        self.tight.groupoid()
    }

    pub fn t(&self, s: usize) -> ExactMatrix {
        t_op(&self.tight, s)
    }

    /// `j(T_s)`, the indicator of `[s, D_{s*s}]`.
    pub fn t_function(&self, s: usize) -> Vec<C64> {
        indicator(self.groupoid(), &self.tight.bisection(s))
    }

    /// Hull elements whose operators generate the subalgebra.
    pub fn generator_elements(&self, sub: Subalgebra) -> Result<Vec<usize>> {
        let s = self.hull.semigroup();
        Ok(match sub {
            Subalgebra::Diagonal => s.idempotents().to_vec(),
            Subalgebra::Siso => self.siso.iter().copied().collect(),
            Subalgebra::Core => self.core.iter().map(|&a| self.hull.generator(a)).collect(),
            Subalgebra::SisoCore => self.f_lambda.iter().copied().collect(),
            Subalgebra::Cycline => {
                let pairs = self.cycline.as_ref().ok_or(Error::NoDegree("the cycline subalgebra"))?;
                let set: BTreeSet<usize> = pairs.iter().map(|&(a, b)| self.hull.basic(a, b)).collect();
                set.into_iter().collect()
            }
            Subalgebra::Full => (0..s.len()).collect(),
        })
    }

    pub fn subalgebra(&self, sub: Subalgebra) -> Result<SubalgebraBasis> {
        let gens: Vec<Vec<C64>> = self.generator_elements(sub)?.into_iter().map(|s| self.t_function(s)).collect();
        Ok(star_closure(self.groupoid(), &gens, &self.options.algebra)?)
    }

    /// `C*_r(G)`; the operators `T_s` span all of it.
    pub fn algebra(&self) -> Result<&SubalgebraBasis> {
        if let Some(a) = self.algebra.get() {
            return Ok(a);
        }
        let a = self.subalgebra(Subalgebra::Full)?;
        assert_eq!(a.dimension(), self.groupoid().len(), "T_s must generate C*_r(G)");
        Ok(self.algebra.get_or_init(|| a))
    }

    pub fn blocks(&self) -> Result<&[Block]> {
        if let Some(b) = self.blocks.get() {
            return Ok(b);
        }
        let b = minimal_ideal_blocks(self.groupoid(), self.algebra()?, &self.options.algebra)?;
        Ok(self.blocks.get_or_init(|| b))
    }

    /// Whether a theorem predicts that the subalgebra detects ideals here.
    pub fn predicted(&self, sub: Subalgebra) -> bool {
        match sub {
            Subalgebra::Siso | Subalgebra::SisoCore | Subalgebra::Full => true,
            Subalgebra::Core => self.hull.is_singly_aligned(),
            Subalgebra::Cycline => self.cycline.is_some(),
            Subalgebra::Diagonal => false,
        }
    }

    pub fn detect(&self, sub: Subalgebra) -> Result<SubalgebraVerdict> {
        let a = self.algebra()?;
        let gens = self.generator_elements(sub)?;
        let b = self.subalgebra(sub)?;
        let detection = detects_ideals(self.groupoid(), a, &b, &self.options.algebra)?;
        Ok(SubalgebraVerdict {
            subalgebra: sub,
            generators: gens.len(),
            detection,
            predicted: self.predicted(sub),
            provenance: "floating",
            regime: REGIME,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_a_pipeline() {
        let m = Model::build(&fixtures::fixture_a(), &PipelineOptions::default()).unwrap();
        assert_eq!(m.hull.len(), 6);
        assert_eq!(m.filters.len(), 3);
        assert_eq!(m.census.tight.len(), 2);
        assert_eq!(m.tight.len(), 4);
        assert_eq!(m.algebra().unwrap().dimension(), 4);
        assert_eq!(m.blocks().unwrap().len(), 1);
        assert_eq!(m.subalgebra(Subalgebra::Diagonal).unwrap().dimension(), 2);
        for sub in [Subalgebra::Diagonal, Subalgebra::Siso, Subalgebra::Core, Subalgebra::SisoCore] {
            assert!(m.detect(sub).unwrap().detection.detects, "{sub}");
        }
        assert!(matches!(m.detect(Subalgebra::Cycline), Err(Error::NoDegree(_))));
    }

    #[test]
    fn fixture_b_pipeline() {
        let m = Model::build(&fixtures::fixture_b(), &PipelineOptions::default()).unwrap();
        assert_eq!(m.tight.len(), 2);
        assert_eq!(m.blocks().unwrap().len(), 2);
        let d = m.detect(Subalgebra::Diagonal).unwrap();
        assert!(!d.detection.detects);
        assert!(d.detection.certificate.is_some());
        assert!(m.detect(Subalgebra::Siso).unwrap().detection.detects);
    }

    #[test]
    fn fixture_c_pipeline() {
        let m = Model::build(&fixtures::fixture_c(), &PipelineOptions::default()).unwrap();
        assert_eq!(m.tight.len(), 16);
        assert_eq!(m.blocks().unwrap().len(), 1);
        assert!(m.detect(Subalgebra::Cycline).unwrap().detection.detects);
    }

    #[test]
    fn subalgebra_names_round_trip() {
        for s in Subalgebra::DETECTABLE {
            assert_eq!(s.name().parse::<Subalgebra>().unwrap(), s);
        }
        assert!("bogus".parse::<Subalgebra>().is_err());
    }
}
