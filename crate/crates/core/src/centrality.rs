//! Full flow vitality and full flow betweenness of a vertex set.
//!
//! Both sum, over ordered pairs `(y, z)` with positive maximum flow value
//! `phi_yz`, a ratio with `phi_yz` as denominator: `phi_yz(X)` for vitality,
//! `lambda_yz(X)` for betweenness. Sums are exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::flow::max_flow_value;
use crate::network::{Network, VertexSet};
use crate::quantities::{lambda_pair, LambdaMode, DEFAULT_BUDGET};

pub type Rational = BigRational;

/// One summand: the pair, its maximum flow value and the two numerators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTerm {
    pub y: usize,
    pub z: usize,
    pub phi_total: u64,
    pub phi_x: u64,
    pub lambda_x: Option<u64>,
}

impl PairTerm {
    pub fn vitality(&self) -> Rational {
        ratio(self.phi_x, self.phi_total)
    }

    pub fn betweenness(&self) -> Option<Rational> {
        self.lambda_x.map(|l| ratio(l, self.phi_total))
    }
}

fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralityReport {
    pub set: VertexSet,
    pub vitality: Rational,
    pub betweenness: Option<Rational>,
    /// Per-pair summands in canonical pair order, when requested.
    pub terms: Option<Vec<PairTerm>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralityOptions {
    pub mode: LambdaMode,
    pub budget: u64,
    pub explain: bool,
    /// Worker threads for the per-pair fan-out; 1 runs inline.
    pub jobs: usize,
    pub betweenness: bool,
}

impl Default for CentralityOptions {
    fn default() -> Self {
        CentralityOptions {
            mode: LambdaMode::Auto,
            budget: DEFAULT_BUDGET,
            explain: false,
            jobs: 1,
            betweenness: true,
        }
    }
}

/// Ordered pairs of distinct vertices, in canonical order.
fn pairs(net: &Network) -> Vec<(usize, usize)> {
    let n = net.vertex_count();
    (0..n)
        .flat_map(|y| (0..n).filter(move |&z| z != y).map(move |z| (y, z)))
        .collect()
}

fn pair_term(
    net: &Network,
    restricted: &Network,
    set: &VertexSet,
    (y, z): (usize, usize),
    options: &CentralityOptions,
) -> Result<Option<PairTerm>> {
    let phi_total = max_flow_value(net, y, z)?;
    if phi_total == 0 {
        return Ok(None);
    }
    let phi_x = phi_total - max_flow_value(restricted, y, z)?;
    let lambda_x = if !options.betweenness {
        None
    } else if options.mode == LambdaMode::Auto && set.len() <= 1 {
        Some(phi_x)
    } else {
        Some(lambda_pair(net, y, z, set, options.mode, options.budget)?.value)
    };
    Ok(Some(PairTerm {
        y,
        z,
        phi_total,
        phi_x,
        lambda_x,
    }))
}

fn terms_for(net: &Network, set: &VertexSet, options: &CentralityOptions) -> Result<Vec<PairTerm>> {
    net.check_set(set)?;
    let restricted = net.restrict(set)?;
    let all = pairs(net);
    let compute = |&p: &(usize, usize)| pair_term(net, &restricted, set, p, options);
    let terms: Vec<Option<PairTerm>> = if options.jobs <= 1 {
        all.iter().map(compute).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .map_err(|e| Error::InvariantViolation(format!("thread pool: {e}")))?;
        pool.install(|| all.par_iter().map(compute).collect::<Result<_>>())?
    };
    Ok(terms.into_iter().flatten().collect())
}

fn report_from_terms(set: &VertexSet, terms: Vec<PairTerm>, options: &CentralityOptions) -> Result<CentralityReport> {
    let vitality = terms.iter().map(PairTerm::vitality).fold(Rational::zero(), |a, b| a + b);
    let betweenness = if options.betweenness {
        Some(
            terms
                .iter()
                .map(|t| t.betweenness().expect("computed per term"))
                .fold(Rational::zero(), |a, b| a + b),
        )
    } else {
        None
    };
    if let Some(b) = &betweenness {
        if vitality > *b {
            return Err(Error::InvariantViolation(format!(
                "vitality {vitality} exceeds betweenness {b}"
            )));
        }
    }
    Ok(CentralityReport {
        set: set.clone(),
        vitality,
        betweenness,
        terms: options.explain.then_some(terms),
    })
}

pub fn full_flow_vitality(net: &Network, set: &VertexSet) -> Result<Rational> {
    let options = CentralityOptions {
        betweenness: false,
        ..CentralityOptions::default()
    };
    let terms = terms_for(net, set, &options)?;
    Ok(report_from_terms(set, terms, &options)?.vitality)
}

pub fn full_flow_betweenness(net: &Network, set: &VertexSet, mode: LambdaMode, budget: u64) -> Result<Rational> {
    let options = CentralityOptions {
        mode,
        budget,
        ..CentralityOptions::default()
    };
    let terms = terms_for(net, set, &options)?;
    Ok(report_from_terms(set, terms, &options)?
        .betweenness
        .expect("betweenness requested"))
}

/// One report per set, in the order given.
pub fn centrality_report(
    net: &Network,
    sets: &[VertexSet],
    options: &CentralityOptions,
) -> Result<Vec<CentralityReport>> {
    sets.iter()
        .map(|set| report_from_terms(set, terms_for(net, set, options)?, options))
        .collect()
}

/// `r` rounded half away from zero to `places` decimals.
pub fn decimal(r: &Rational, places: u32) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = (r * Rational::from_integer(scale.clone())).round().to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let magnitude = scaled.abs();
    let whole = &magnitude / &scale;
    let frac = &magnitude % &scale;
    if places == 0 {
        format!("{sign}{whole}")
    } else {
        format!("{sign}{whole}.{frac:0>width$}", width = places as usize)
    }
}
