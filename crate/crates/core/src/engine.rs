//! The regularity engine: generic-point selection, gr-rank at a point, the
//! support of the irregularity complex, the irregularity divisor and the
//! final verdict, including charts at infinity.
//!
//! Component enumeration is the squarefree codimension-one splitting of the
//! singular locus plus optional user-supplied components; genericity is
//! defended by avoidance polynomials and multi-point consensus sampling.
//! Disagreement between sampled points marks a record UNSTABLE and degrades
//! the verdict to INCONCLUSIVE instead of guessing.

use crate::arith::{rat_i64, Rational};
use crate::budget::Budget;
use crate::charvar::singular_locus;
use crate::error::{Error, Result};
use crate::multipoly::MultiPoly;
use crate::ratweyl::{holonomic_rank, RankResult};
use crate::rng::Rng;
use crate::sqfree::{cmp_component, rational_roots};
use crate::weyl::DIdeal;
use crate::wgb::initial_ideal;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub height_bound: u64,
    pub points_per_component: usize,
    pub check_infinity: bool,
    /// 0-based chart indices to pull back through; None means every chart
    /// when `check_infinity` is set.
    pub charts: Option<Vec<usize>>,
    /// User-declared components (override the computed singular locus).
    pub components: Vec<MultiPoly>,
    /// Extra avoidance polynomials (higher-codimension strata to dodge).
    pub avoid: Vec<MultiPoly>,
    /// User-declared points, tried before random sampling on any affine
    /// component they lie on.
    pub declared_points: Vec<Vec<Rational>>,
    /// Extra weight vectors tested at every sampled point; any rank drop
    /// certifies irregularity.
    pub extra_weights: Vec<Vec<Rational>>,
    /// Sampling attempts per point before giving up.
    pub max_point_attempts: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            height_bound: 5,
            points_per_component: 3,
            check_infinity: false,
            charts: None,
            components: Vec::new(),
            avoid: Vec::new(),
            declared_points: Vec::new(),
            extra_weights: Vec::new(),
            max_point_attempts: 240,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Chart {
    Affine,
    /// 0-based index of the coordinate inverted by the chart change.
    AtInfinity(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordStatus {
    /// All sampled points agree.
    Stable,
    /// Sampled gr-ranks disagree; genericity is suspect.
    Unstable,
    /// No rational point of bounded height was found.
    Unsampled,
}

#[derive(Debug, Clone)]
pub struct ComponentRecord {
    pub component: MultiPoly,
    pub chart: Chart,
    pub points: Vec<Vec<Rational>>,
    pub gr_ranks: Vec<Option<usize>>,
    pub status: RecordStatus,
    /// rank - consensus gr-rank, present only for STABLE records.
    pub irr_mult: Option<i64>,
    pub notes: Vec<String>,
}

/// Effective formal sum of irreducible-looking affine components; the
/// divisor lives on the affine space carrying the ideal, so irregularity
/// along the hyperplane at infinity is reported through records and
/// caveats instead of a divisor entry.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    pub entries: Vec<(MultiPoly, u64)>,
}

impl Divisor {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    Irregular,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct RegularityReport {
    pub rank: RankResult,
    pub records: Vec<ComponentRecord>,
    pub infinity_checked: bool,
    pub verdict: Verdict,
    pub divisor: Divisor,
    pub caveats: Vec<String>,
}

/// A rational point on `component` avoiding the other constraints, found by
/// fixing all but one coordinate at seeded random rationals of bounded
/// height and solving for rational roots. Deterministic for a fixed seed.
pub fn generic_point(
    component: &MultiPoly,
    avoid: &[MultiPoly],
    exclude: &[Vec<Rational>],
    seed: u64,
    stream: u64,
    height_bound: u64,
    max_attempts: u64,
) -> Result<Vec<Rational>> {
    assert!(!component.is_zero());
    let n = component.nvars();
    // solve for low-degree coordinates first
    let mut coords: Vec<usize> = (0..n).filter(|&v| component.degree_in(v) > 0).collect();
    coords.sort_by_key(|&v| (component.degree_in(v), v));
    if coords.is_empty() {
        // a nonzero constant never vanishes
        return Err(Error::NoRationalPoint {
            component: format!("{:?}", component),
        });
    }
    let mut rng = Rng::derive(seed, "generic-point", stream);
    for attempt in 0..max_attempts {
        let height = height_bound << (attempt / 48);
        let v = coords[(attempt % coords.len() as u64) as usize];
        let mut assign: Vec<Option<Rational>> = vec![None; n];
        for (i, slot) in assign.iter_mut().enumerate() {
            if i != v {
                *slot = Some(rng.rational(height));
            }
        }
        let g = component.specialize(&assign);
        let candidates: Vec<Rational> = if g.is_zero() {
            // the whole line lies on the component; any value works
            vec![rng.rational(height)]
        } else if g.degree_in(v) == 0 {
            continue; // no solution along this coordinate
        } else {
            let uni = extract_univariate(&g, v);
            match rational_roots(&uni) {
                Ok(roots) => roots,
                Err(_) => continue,
            }
        };
        'root: for r in candidates {
            let mut point: Vec<Rational> = Vec::with_capacity(n);
            for (i, a) in assign.iter().enumerate() {
                if i == v {
                    point.push(r.clone());
                } else {
                    point.push(a.clone().unwrap());
                }
            }
            if !component.eval(&point).is_zero() {
                continue;
            }
            for q in avoid {
                if q.eval(&point).is_zero() {
                    continue 'root;
                }
            }
            if exclude.iter().any(|p| p == &point) {
                continue;
            }
            return Ok(point);
        }
    }
    Err(Error::NoRationalPoint {
        component: format!("{:?}", component),
    })
}

/// Collapses a polynomial supported on a single variable into one variable.
fn extract_univariate(g: &MultiPoly, v: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(1);
    for (m, c) in g.terms() {
        out.add_term(vec![m[v]], c.clone());
    }
    out
}

/// rank(gr of the module) at p: translate p to the origin, deform by the
/// all-ones weight, take the holonomic rank of the initial ideal.
pub fn gr_rank_at_point(ideal: &DIdeal, p: &[Rational], budget: &Budget) -> Result<RankResult> {
    gr_rank_at_point_weighted(ideal, p, &vec![rat_i64(1); ideal.nvars], budget)
}

pub fn gr_rank_at_point_weighted(
    ideal: &DIdeal,
    p: &[Rational],
    w: &[Rational],
    budget: &Budget,
) -> Result<RankResult> {
    let translated = ideal.translate(p)?;
    let init = initial_ideal(&translated, w, budget)?;
    holonomic_rank(&init, budget)
}

/// One chart's worth of work: the chart label and the ideal living on it
/// (the original for the affine chart, a pullback for charts at infinity).
#[derive(Debug, Clone)]
pub struct ChartTask {
    pub chart: Chart,
    pub ideal: DIdeal,
}

/// Output of a single chart run. Tasks are independent pure pipelines, so
/// they may execute concurrently; assembly is a deterministic fold over the
/// outputs in task order.
#[derive(Debug, Clone)]
pub struct ChartOutput {
    pub chart: Chart,
    pub records: Vec<ComponentRecord>,
    pub caveats: Vec<String>,
    /// Set when the chart had to be skipped (pullback of infinite rank).
    pub skipped: bool,
}

/// The affine task plus one task per requested chart at infinity.
pub fn plan_charts(ideal: &DIdeal, options: &Options) -> Result<Vec<ChartTask>> {
    let n = ideal.nvars;
    let mut tasks = alloc::vec![ChartTask {
        chart: Chart::Affine,
        ideal: ideal.clone(),
    }];
    if options.check_infinity {
        let charts: Vec<usize> = options.charts.clone().unwrap_or_else(|| (0..n).collect());
        for k in charts {
            if k >= n {
                return Err(Error::Usage(format!(
                    "chart index {} out of range for {} variables",
                    k + 1,
                    n
                )));
            }
            tasks.push(ChartTask {
                chart: Chart::AtInfinity(k),
                ideal: ideal.chart_pullback(k)?,
            });
        }
    }
    Ok(tasks)
}

/// Runs one chart: rank sanity for pullbacks, singular locus, point
/// sampling and gr-ranks. `rank` is the global holonomic rank.
pub fn run_chart_task(
    task: &ChartTask,
    rank: usize,
    options: &Options,
    budget: &Budget,
) -> Result<ChartOutput> {
    let mut caveats = Vec::new();
    if let Chart::AtInfinity(k) = task.chart {
        match holonomic_rank(&task.ideal, budget)? {
            RankResult::Finite(r) => {
                if r != rank {
                    caveats.push(format!(
                        "chart {}: rank {} differs from affine rank {}; denominators cleared in the chart transport may have shrunk the ideal",
                        k + 1, r, rank
                    ));
                }
            }
            RankResult::Infinite => {
                caveats.push(format!(
                    "chart {}: pulled-back ideal has infinite rank; chart skipped",
                    k + 1
                ));
                return Ok(ChartOutput {
                    chart: task.chart,
                    records: Vec::new(),
                    caveats,
                    skipped: true,
                });
            }
        }
    }
    let records = run_chart(&task.ideal, task.chart, rank, options, budget, &mut caveats)?;
    Ok(ChartOutput {
        chart: task.chart,
        records,
        caveats,
        skipped: false,
    })
}

fn run_chart(
    ideal: &DIdeal,
    chart: Chart,
    rank: usize,
    options: &Options,
    budget: &Budget,
    caveats: &mut Vec<String>,
) -> Result<Vec<ComponentRecord>> {
    let components = if let (Chart::Affine, false) = (chart, options.components.is_empty()) {
        options.components.clone()
    } else {
        let sing = singular_locus(ideal, budget)?;
        if sing.may_have_deeper_components {
            caveats.push(format!(
                "{}: the singular-locus ideal has structure beyond its reduced hypersurface part; genericity relies on avoidance polynomials and consensus sampling",
                chart_name(chart)
            ));
        }
        sing.codim1
    };
    let chart_stream = match chart {
        Chart::Affine => 0u64,
        Chart::AtInfinity(k) => 1 + k as u64,
    };
    let mut records = Vec::with_capacity(components.len());
    for (ci, comp) in components.iter().enumerate() {
        let mut avoid: Vec<MultiPoly> = components
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != ci)
            .map(|(_, f)| f.clone())
            .collect();
        avoid.extend(options.avoid.iter().cloned());
        let mut record = ComponentRecord {
            component: comp.clone(),
            chart,
            points: Vec::new(),
            gr_ranks: Vec::new(),
            status: RecordStatus::Stable,
            irr_mult: None,
            notes: vec![String::from("squarefree, irreducibility unverified")],
        };
        // user-declared points that lie on this component come first
        if chart == Chart::Affine {
            for p in &options.declared_points {
                if record.points.len() >= options.points_per_component {
                    break;
                }
                if p.len() == comp.nvars()
                    && comp.eval(p).is_zero()
                    && avoid.iter().all(|q| !q.eval(p).is_zero())
                    && !record.points.contains(p)
                {
                    let gr = gr_rank_at_point(ideal, p, budget)?;
                    record.gr_ranks.push(gr.finite());
                    record.points.push(p.clone());
                }
            }
        }
        while record.points.len() < options.points_per_component {
            let k = record.points.len();
            let stream = chart_stream * 1_000_000 + (ci as u64) * 1_000 + k as u64;
            match generic_point(
                comp,
                &avoid,
                &record.points,
                options.seed,
                stream,
                options.height_bound,
                options.max_point_attempts,
            ) {
                Ok(p) => {
                    let gr = gr_rank_at_point(ideal, &p, budget)?;
                    record.gr_ranks.push(gr.finite());
                    for w in &options.extra_weights {
                        if w.len() != ideal.nvars {
                            continue;
                        }
                        let gw = gr_rank_at_point_weighted(ideal, &p, w, budget)?;
                        if gw.finite() != Some(rank) {
                            caveats.push(format!(
                                "{}: extra weight test failed on a sampled point of a component (gr-rank differs from rank); certifies irregularity",
                                chart_name(chart)
                            ));
                            record.notes.push(String::from("extra-weight rank drop"));
                        }
                    }
                    record.points.push(p);
                }
                Err(Error::NoRationalPoint { .. }) => {
                    // a component can hold fewer distinct rational points
                    // than requested (a single point in one variable)
                    if record.points.is_empty() {
                        record.status = RecordStatus::Unsampled;
                    } else {
                        record.notes.push(format!(
                            "only {} distinct rational point(s) found",
                            record.points.len()
                        ));
                    }
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if record.status != RecordStatus::Unsampled {
            let first = record.gr_ranks.first().cloned().unwrap_or(None);
            if record.gr_ranks.iter().all(|g| *g == first) {
                match first {
                    Some(g) => {
                        record.status = RecordStatus::Stable;
                        record.irr_mult = Some(rank as i64 - g as i64);
                    }
                    None => {
                        record.status = RecordStatus::Unstable;
                        record
                            .notes
                            .push(String::from("gr-rank not finite at sampled points"));
                    }
                }
            } else {
                record.status = RecordStatus::Unstable;
            }
        }
        records.push(record);
    }
    Ok(records)
}

fn chart_name(chart: Chart) -> String {
    match chart {
        Chart::Affine => String::from("affine chart"),
        Chart::AtInfinity(k) => format!("chart {}", k + 1),
    }
}

/// Transports a chart-coordinate polynomial back to affine coordinates
/// (or the other way; the substitution is involutive): y_j = x_j / x_k,
/// y_k = 1 / x_k, cleared of x_k denominators and normalized primitive.
pub fn chart_transport_poly(f: &MultiPoly, k: usize) -> MultiPoly {
    let n = f.nvars();
    let deg = f.total_degree();
    let mut out = MultiPoly::zero(n);
    for (m, c) in f.terms() {
        let total: u32 = m.iter().sum();
        let mut mm = m.clone();
        mm[k] = deg - total;
        out.add_term(mm, c.clone());
    }
    out.primitive_part()
}

/// The support of the irregularity complex as component records for the
/// affine chart: every codimension-one component with sampled gr-ranks;
/// the support itself is the set of stable records with irr_mult > 0.
pub fn irregular_support(
    ideal: &DIdeal,
    options: &Options,
    budget: &Budget,
) -> Result<Vec<ComponentRecord>> {
    let rank = match holonomic_rank(ideal, budget)? {
        RankResult::Finite(r) => r,
        RankResult::Infinite => return Err(Error::NotFiniteRank),
    };
    let mut caveats = Vec::new();
    run_chart(ideal, Chart::Affine, rank, options, budget, &mut caveats)
}

/// Report for inputs whose holonomic rank is not finite.
pub fn infinite_rank_report() -> RegularityReport {
    RegularityReport {
        rank: RankResult::Infinite,
        records: Vec::new(),
        infinity_checked: false,
        verdict: Verdict::Inconclusive,
        divisor: Divisor::default(),
        caveats: alloc::vec![String::from(
            "holonomic rank is not finite; the input does not present a meromorphic connection",
        )],
    }
}

/// Deterministic fold of chart outputs into verdict, divisor and caveats.
/// Outputs must be passed in task order (affine first).
pub fn assemble_report(
    rank: usize,
    outputs: &[ChartOutput],
    options: &Options,
) -> RegularityReport {
    let mut caveats: Vec<String> = Vec::new();
    caveats.push(String::from(
        "meromorphic-connection hypothesis is a user assertion; only Ch(M) is stratified",
    ));
    for out in outputs {
        caveats.extend(out.caveats.iter().cloned());
    }
    let planned_infinity = options.check_infinity
        && outputs.iter().any(|o| o.chart != Chart::Affine);
    let infinity_checked = planned_infinity && outputs.iter().all(|o| !o.skipped);

    // chart coherence: transported components must agree with affine ones
    let affine_records: Vec<ComponentRecord> = outputs
        .iter()
        .find(|r| r.chart == Chart::Affine)
        .map(|r| r.records.clone())
        .unwrap_or_default();
    let mut coherent = true;
    for run in outputs.iter().filter(|r| r.chart != Chart::Affine) {
        let Chart::AtInfinity(k) = run.chart else {
            continue;
        };
        for rec in &run.records {
            if is_coordinate(&rec.component, k) {
                continue; // the hyperplane at infinity itself
            }
            let transported = chart_transport_poly(&rec.component, k);
            if let Some(aff) = affine_records.iter().find(|a| a.component == transported) {
                if let (Some(x), Some(y)) = (aff.irr_mult, rec.irr_mult) {
                    if x != y {
                        coherent = false;
                        caveats.push(format!(
                            "chart {}: irregularity multiplicity {} disagrees with affine value {} on a shared component",
                            k + 1, y, x
                        ));
                    }
                }
            }
        }
    }

    // assemble the divisor from the affine records (the divisor lives on
    // the affine space); the hyperplane at infinity reports separately
    let mut entries: Vec<(MultiPoly, u64)> = Vec::new();
    for rec in &affine_records {
        if let Some(m) = rec.irr_mult {
            if m > 0 {
                entries.push((rec.component.clone(), m as u64));
            }
        }
    }
    entries.sort_by(|(a, _), (b, _)| cmp_component(a, b));
    let mut infinity_mults: Vec<i64> = Vec::new();
    for run in outputs.iter().filter(|r| r.chart != Chart::Affine) {
        let Chart::AtInfinity(k) = run.chart else {
            continue;
        };
        for rec in &run.records {
            if is_coordinate(&rec.component, k) {
                if let Some(m) = rec.irr_mult {
                    infinity_mults.push(m);
                }
            }
        }
    }
    if !infinity_mults.is_empty() {
        let first = infinity_mults[0];
        if infinity_mults.iter().all(|&m| m == first) {
            if first > 0 {
                caveats.push(format!(
                    "the hyperplane at infinity carries irregularity multiplicity {first}; it is not an affine divisor component"
                ));
            }
        } else {
            coherent = false;
            caveats.push(String::from(
                "charts disagree on the irregularity multiplicity of the hyperplane at infinity",
            ));
        }
    }

    // verdict
    let mut all_records: Vec<ComponentRecord> = Vec::new();
    for run in outputs {
        all_records.extend(run.records.clone());
    }
    let any_negative = all_records
        .iter()
        .any(|r| r.irr_mult.is_some_and(|m| m < 0));
    if any_negative {
        caveats.push(String::from(
            "a sampled gr-rank exceeds the rank; genericity of the sampled points is suspect",
        ));
    }
    let some_positive = all_records
        .iter()
        .any(|r| r.status == RecordStatus::Stable && r.irr_mult.is_some_and(|m| m > 0));
    let weight_failure = all_records
        .iter()
        .any(|r| r.notes.iter().any(|n| n == "extra-weight rank drop"));
    let all_stable_zero = all_records
        .iter()
        .all(|r| r.status == RecordStatus::Stable && r.irr_mult == Some(0));
    let verdict = if some_positive || weight_failure {
        Verdict::Irregular
    } else if all_stable_zero && infinity_checked && coherent && !any_negative {
        Verdict::Regular
    } else {
        Verdict::Inconclusive
    };
    if !infinity_checked && !some_positive {
        caveats.push(String::from(
            "charts at infinity were not checked; regularity on complete space is not certified",
        ));
    }

    RegularityReport {
        rank: RankResult::Finite(rank),
        records: all_records,
        infinity_checked,
        verdict,
        divisor: Divisor { entries },
        caveats,
    }
}

/// Full pipeline: affine chart, optional charts at infinity, verdict and
/// irregularity divisor.
pub fn is_regular(ideal: &DIdeal, options: &Options, budget: &Budget) -> Result<RegularityReport> {
    let rank = match holonomic_rank(ideal, budget)? {
        RankResult::Finite(r) => r,
        RankResult::Infinite => return Ok(infinite_rank_report()),
    };
    let tasks = plan_charts(ideal, options)?;
    let mut outputs = Vec::with_capacity(tasks.len());
    for task in &tasks {
        outputs.push(run_chart_task(task, rank, options, budget)?);
    }
    Ok(assemble_report(rank, &outputs, options))
}

/// The irregularity divisor of a meromorphic connection.
pub fn irregularity_divisor(
    ideal: &DIdeal,
    options: &Options,
    budget: &Budget,
) -> Result<Divisor> {
    Ok(is_regular(ideal, options, budget)?.divisor)
}

fn is_coordinate(f: &MultiPoly, k: usize) -> bool {
    f.num_terms() == 1
        && f.terms().all(|(m, _)| {
            m.iter()
                .enumerate()
                .all(|(i, &e)| if i == k { e == 1 } else { e == 0 })
        })
}
