//! One-call analysis of a curve: Milnor profile plus freeness report.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::AnalysisError;
use crate::families::CurveSpec;
use crate::freeness::{analyze_freeness, CurveContext, FreenessReport, SaturationMode};
use crate::milnor::{full_profile, CurveInput, MilnorProfile, ProfileOptions};

#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    pub profile: ProfileOptions,
    pub saturation: SaturationMode,
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub profile: MilnorProfile,
    pub report: FreenessReport,
    #[serde(skip)]
    pub runtime: Duration,
}

impl From<&CurveSpec> for CurveContext {
    fn from(s: &CurveSpec) -> Self {
        CurveContext {
            irreducible: s.expected.irreducible,
            singularities: s.singularities.clone(),
        }
    }
}

pub fn analyze(c: &CurveInput, ctx: &CurveContext, opts: &AnalysisOptions) -> Result<Analysis, AnalysisError> {
    let start = Instant::now();
    let profile = full_profile(c, &opts.profile)?;
    let report = analyze_freeness(c, &profile, ctx, opts.saturation, opts.profile.seed)?;
    Ok(Analysis { profile, report, runtime: start.elapsed() })
}

pub fn analyze_spec(spec: &CurveSpec, opts: &AnalysisOptions) -> Result<Analysis, AnalysisError> {
    let c = CurveInput::new(spec.f.clone())?;
    analyze(&c, &CurveContext::from(spec), opts)
}
