use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use nilrf_core::certify::{analyze_with, LowerBoundCertificate, MinorSpan, RFVerdict, SearchOptions};
use nilrf_core::constructions::{
    galois_twist, gaussian_quotient, heisenberg, heisenberg_gaussian, heisenberg_sum, QuadraticField,
};
use nilrf_core::divisibility::{
    divisibility_at_most, divisibility_central, divisibility_oracle, divisibility_upper_primes, lcm_upto, rf_profile, RFProfilePoint,
};
use nilrf_core::group::{GroupElement, GroupPresentation};
use nilrf_core::pencils::{realize, BlockPencil};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::file::{ints, GroupFile, Int};
use crate::report::{AnalyzeBody, DivisibilityBody, GrowthWire, OracleWire, PrimeBoundWire, Report, ReportBody, WitnessWire};

fn ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e3 * 100.0).round() / 100.0
}

fn vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Runs `f` on a pool of `jobs` workers (0 picks the number of CPUs).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

/// Parallel candidate scan that still returns the first certificate in order.
fn first_certificate_par(span: &MinorSpan, candidates: &[Vec<BigInt>]) -> Option<LowerBoundCertificate> {
    candidates.par_iter().find_map_first(|v| span.certify(v))
}

pub struct Analysis {
    pub verdict: RFVerdict,
    pub report: Report,
}

pub fn analyze(group: &GroupFile, opts: &SearchOptions, timing: bool) -> CliResult<Analysis> {
    let pres = group.presentation()?;
    let start = Instant::now();
    let verdict = analyze_with(&pres, opts, &first_certificate_par)?;
    let analyze_ms = ms(start);
    let start = Instant::now();
    let v = verdict.lower.v.clone();
    let growth = (2..=5u64)
        .into_par_iter()
        .map(|kappa| {
            let scaled: Vec<BigInt> = v.iter().map(|x| x * lcm_upto(kappa)).collect();
            let bound = BigInt::from(kappa).pow(verdict.delta as u32 + 1);
            let found = divisibility_at_most(&pres, &scaled, &bound)?;
            Ok(GrowthWire {
                kappa,
                v: ints(&scaled),
                bound: Int(bound),
                exceeds: found.is_none(),
                witness: found.map(|(value, w)| WitnessWire::new(Some(kappa), &scaled, &value, &w)),
            })
        })
        .collect::<Result<Vec<_>, nilrf_core::Error>>()?;
    let timing_ms = timing.then(|| BTreeMap::from([("analyze".to_string(), analyze_ms), ("growth".to_string(), ms(start))]));
    let body = AnalyzeBody {
        options: opts.into(),
        verdict: (&verdict).into(),
        lower_certificate: (&verdict.lower).into(),
        growth,
    };
    Ok(Analysis { verdict, report: Report::new(group.clone(), ReportBody::Analyze(body), timing_ms) })
}

pub fn analysis_text(a: &Analysis) -> String {
    let v = &a.verdict;
    let g = &a.report.group;
    let mut s = String::new();
    let name = g.name.as_deref().unwrap_or("(unnamed)");
    let _ = writeln!(s, "group          {name}: m = {}, n = {}", g.m, g.n);
    let _ = writeln!(s, "digest         sha256:{}", a.report.group_sha256);
    let cert = &v.lower;
    let integral = if cert.is_integral() { "integral" } else { "rational" };
    let _ = writeln!(
        s,
        "delta          {} via (v.x)^{} in I_{}, v = {}, {} {integral} terms",
        v.delta,
        cert.power,
        cert.d,
        vector(&cert.v),
        cert.terms.len()
    );
    if let Some(h) = v.delta_height {
        let _ = writeln!(s, "               certified over candidates of height <= {h}");
    }
    let method = match v.upper.method {
        nilrf_core::certify::UpperMethod::RankN1 => "rank of the single matrix".to_string(),
        nilrf_core::certify::UpperMethod::BinaryGcdN2 => match &v.upper.hyperplane_v {
            Some(h) => format!("gcd of minors is a power of {}.x", vector(h)),
            None => "gcd of minors is constant".to_string(),
        },
        nilrf_core::certify::UpperMethod::HeuristicInterval => {
            let (lo, hi) = v.upper.interval.unwrap_or_default();
            format!("sampled basis, interval [{lo}, {hi}]")
        }
    };
    let _ = writeln!(s, "d_upper        {} ({method})", v.d_upper);
    let (lo, hi) = v.exponent_interval;
    let _ = writeln!(s, "exponent       [{lo}, {hi}]{}", if v.tight { " tight" } else { "" });
    let primes: Vec<String> = v.upper.good_primes.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "good primes    {}", if primes.is_empty() { "none".into() } else { primes.join(" ") });
    if !v.upper.skipped_primes.is_empty() {
        let _ = writeln!(s, "               {} primes skipped over the point budget", v.upper.skipped_primes.len());
    }
    if let ReportBody::Analyze(b) = &a.report.result {
        for g in &b.growth {
            let at = vector(&crate::file::bigs(&g.v));
            let _ = match &g.witness {
                None => writeln!(s, "growth k={}     D(0, {at}) > {}", g.kappa, g.bound.0),
                Some(w) => writeln!(s, "growth k={}     D(0, {at}) = {} <= {}", g.kappa, w.value.0, g.bound.0),
            };
        }
    }
    if let Some(t) = &a.report.timing_ms {
        let total: f64 = t.values().sum();
        let _ = writeln!(s, "time           {total:.2} ms");
    }
    s
}

pub struct DivisibilityArgs {
    pub v: Vec<BigInt>,
    pub oracle_bound: Option<u64>,
    pub primes: Option<Vec<u64>>,
}

pub fn divisibility(group: &GroupFile, args: &DivisibilityArgs, timing: bool) -> CliResult<Report> {
    let pres = group.presentation()?;
    if args.v.len() != pres.n() {
        return Err(CliError::Usage(format!("v needs {} coordinates, got {}", pres.n(), args.v.len())));
    }
    if args.v.iter().all(Zero::is_zero) {
        return Err(CliError::Usage("v = 0 is the identity; its divisibility is infinite".into()));
    }
    let mut timing_ms = BTreeMap::new();
    let start = Instant::now();
    let (value, w) = divisibility_central(&pres, &args.v)?;
    timing_ms.insert("central".to_string(), ms(start));
    let oracle = match args.oracle_bound {
        Some(bound) => {
            let start = Instant::now();
            let o = divisibility_oracle(&pres, &args.v, bound)?;
            timing_ms.insert("oracle".to_string(), ms(start));
            let found = o.map(|o| o.value);
            let agrees = found.as_ref().filter(|x| **x <= BigInt::from(bound)).map(|x| *x == value);
            Some(OracleWire { bound, value: found.map(Int), agrees })
        }
        None => None,
    };
    let upper_primes = match &args.primes {
        Some(ps) => {
            let b = divisibility_upper_primes(&pres, &args.v, ps)?;
            Some(PrimeBoundWire {
                primes: ps.clone(),
                value: b.as_ref().map(|b| Int(b.value.clone())),
                p: b.as_ref().map(|b| b.p),
                a: b.as_ref().map(|b| b.a.clone()),
                rank: b.as_ref().map(|b| b.rank),
            })
        }
        None => None,
    };
    let body = DivisibilityBody {
        v: ints(&args.v),
        value: Int(value.clone()),
        witness: WitnessWire::new(None, &args.v, &value, &w),
        oracle,
        upper_primes,
    };
    Ok(Report::new(group.clone(), ReportBody::Divisibility(body), timing.then_some(timing_ms)))
}

pub fn divisibility_text(r: &Report) -> String {
    let ReportBody::Divisibility(b) = &r.result else { return String::new() };
    let w = &b.witness;
    let rows = |l: &[Vec<Int>]| l.iter().map(|x| vector(&crate::file::bigs(x))).collect::<Vec<_>>().join(" ");
    let mut s = String::new();
    let _ = writeln!(s, "D(0, {}) = {}", vector(&crate::file::bigs(&b.v)), b.value.0);
    let _ = writeln!(s, "witness   p = {}, k = {}, a = {}", w.p, w.k, vector(&crate::file::bigs(&w.a)));
    let _ = writeln!(s, "B basis   {}", rows(&w.lattice_b));
    let _ = writeln!(s, "D basis   {}", rows(&w.lattice_d));
    if let Some(o) = &b.oracle {
        let value = o.value.as_ref().map_or("none".to_string(), |x| x.0.to_string());
        let agrees = match o.agrees {
            Some(true) => "agrees",
            Some(false) => "DISAGREES",
            None => "bound too small",
        };
        let _ = writeln!(s, "oracle    {value} (bound {}, {agrees})", o.bound);
    }
    if let Some(u) = &b.upper_primes {
        match (&u.value, u.p) {
            (Some(v), Some(p)) => {
                let _ = writeln!(s, "primes    upper bound {} at p = {p}", v.0);
            }
            _ => {
                let _ = writeln!(s, "primes    no admissible pair");
            }
        }
    }
    s
}

pub fn profile(pres: &GroupPresentation, r_max: usize, budget: usize) -> CliResult<Vec<RFProfilePoint>> {
    if r_max == 0 {
        return Ok(Vec::new());
    }
    Ok(rf_profile(pres, r_max, budget)?)
}

fn element(g: &GroupElement) -> String {
    format!("{};{}", vector(&g.w), vector(&g.v))
}

pub fn profile_text(rows: &[RFProfilePoint]) -> String {
    let mut s = String::from("radius  ball size  max divisibility  argmax\n");
    for p in rows {
        let mark = if p.abelianization_bound { " (abelian)" } else { "" };
        let _ = writeln!(s, "{:>6}  {:>9}  {:>16}  {}{mark}", p.radius, p.ball_size, p.max_divisibility, element(&p.argmax_element));
    }
    s
}

pub fn profile_json(rows: &[RFProfilePoint]) -> String {
    let rows: Vec<serde_json::Value> = rows
        .iter()
        .map(|p| {
            serde_json::json!({
                "radius": p.radius,
                "ball_size": p.ball_size,
                "max_divisibility": p.max_divisibility.to_string(),
                "argmax": { "w": ints(&p.argmax_element.w), "v": ints(&p.argmax_element.v) },
                "abelianization_bound": p.abelianization_bound,
            })
        })
        .collect();
    serde_json::to_string_pretty(&rows).expect("serializable")
}

pub enum Family {
    Heisenberg,
    Gaussian,
    GaussianQuotient,
    Sum { count: usize },
    Galois { disc: i64 },
    Pencil { seed: u64, max_blocks: usize, max_k: usize },
}

fn alpha_pool() -> Vec<BigRational> {
    [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1)]
        .iter()
        .map(|&(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
        .collect()
}

pub fn construct(family: &Family) -> CliResult<GroupFile> {
    let (name, pres) = match *family {
        Family::Heisenberg => ("heisenberg".to_string(), heisenberg()),
        Family::Gaussian => ("heisenberg_gaussian".to_string(), heisenberg_gaussian()),
        Family::GaussianQuotient => ("gaussian_quotient".to_string(), gaussian_quotient()),
        Family::Sum { count } => (format!("heisenberg_sum({count})"), heisenberg_sum(count)?),
        Family::Galois { disc } => (format!("galois_twist({disc})"), galois_twist(&QuadraticField::new(disc)?)?),
        Family::Pencil { seed, max_blocks, max_k } => {
            if max_blocks == 0 || max_k == 0 {
                return Err(CliError::Usage("pencil blocks and sizes must be at least 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let spec = BlockPencil::random(&mut rng, max_blocks, max_k, &alpha_pool());
            let pencil = realize(&spec)?;
            let pres = GroupPresentation::new(pencil.size(), 2, pencil.matrices().to_vec())?;
            (format!("pencil(seed={seed})"), pres)
        }
    };
    Ok(GroupFile::from_presentation(Some(name), &pres))
}
