//! Machine-readable reports and their independent re-verification.

use std::collections::BTreeMap;

use nilrf_core::certify::{CertTerm, LowerBoundCertificate, RFVerdict, SearchOptions, UpperBoundReport, UpperMethod};
use nilrf_core::divisibility::{divisibility_at_most, lcm_upto, DivisibilityWitness};
use nilrf_core::forms::{gcd_minors_binary, rational_linear_factor};
use nilrf_core::group::GroupPresentation;
use nilrf_core::linalg::{rank_mod_p, rational_rank, Sublattice};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::file::{bigs, ints, GroupFile, Int, Rat};

pub const FORMAT: &str = "nilrf-report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tool {
    pub name: String,
    pub version: String,
}

impl Default for Tool {
    fn default() -> Self {
        Tool { name: env!("CARGO_PKG_NAME").into(), version: env!("CARGO_PKG_VERSION").into() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub format: String,
    pub tool: Tool,
    pub group: GroupFile,
    /// [`GroupFile::digest`] of `group`.
    pub group_sha256: String,
    pub result: ReportBody,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportBody {
    Analyze(AnalyzeBody),
    Divisibility(DivisibilityBody),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptionsWire {
    pub height: u64,
    pub seed: u64,
    pub samples: usize,
    pub prime_scan: usize,
    pub point_budget: u64,
}

impl From<&SearchOptions> for OptionsWire {
    fn from(o: &SearchOptions) -> Self {
        OptionsWire { height: o.height, seed: o.seed, samples: o.samples, prime_scan: o.prime_scan, point_budget: o.point_budget }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeBody {
    pub options: OptionsWire,
    pub verdict: VerdictWire,
    pub lower_certificate: CertificateWire,
    /// Compares `D(0, lcm(1..κ)·v)` with `κ^{δ+1}` for the certified `v`.
    pub growth: Vec<GrowthWire>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthWire {
    pub kappa: u64,
    pub v: Vec<Int>,
    /// `κ^{δ+1}`.
    pub bound: Int,
    pub exceeds: bool,
    /// Present exactly when `D(0, v)` is at most the bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessWire>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictWire {
    pub delta: usize,
    pub d_upper: usize,
    pub exponent_interval: (usize, usize),
    pub tight: bool,
    pub delta_height: Option<u64>,
    pub upper: UpperWire,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UpperWire {
    pub method: String,
    pub hyperplane_v: Option<Vec<Int>>,
    pub interval: Option<(usize, usize)>,
    pub sample_basis: Option<Vec<Vec<Int>>>,
    pub good_prime_sample: Option<GoodPrimeWire>,
    pub good_primes: Vec<u64>,
    pub skipped_primes: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoodPrimeWire {
    pub p: u64,
    pub basis: Vec<Vec<u64>>,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateWire {
    pub v: Vec<Int>,
    pub d: usize,
    pub power: u32,
    pub integral: bool,
    pub terms: Vec<TermWire>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermWire {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub multiplier: Vec<u32>,
    pub coeff: Rat,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<u64>,
    pub v: Vec<Int>,
    pub value: Int,
    pub p: u64,
    pub k: u32,
    pub a: Vec<Int>,
    pub lattice_b: Vec<Vec<Int>>,
    pub lattice_d: Vec<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleWire {
    pub bound: u64,
    pub value: Option<Int>,
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrimeBoundWire {
    pub primes: Vec<u64>,
    pub value: Option<Int>,
    pub p: Option<u64>,
    pub a: Option<Vec<u64>>,
    pub rank: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DivisibilityBody {
    pub v: Vec<Int>,
    pub value: Int,
    pub witness: WitnessWire,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleWire>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_primes: Option<PrimeBoundWire>,
}

fn method_name(m: UpperMethod) -> &'static str {
    match m {
        UpperMethod::RankN1 => "rank_n1",
        UpperMethod::BinaryGcdN2 => "binary_gcd_n2",
        UpperMethod::HeuristicInterval => "heuristic_interval",
    }
}

impl From<&UpperBoundReport> for UpperWire {
    fn from(u: &UpperBoundReport) -> Self {
        UpperWire {
            method: method_name(u.method).into(),
            hyperplane_v: u.hyperplane_v.as_deref().map(ints),
            interval: u.interval,
            sample_basis: u.sample_basis.as_ref().map(|b| b.iter().map(|x| ints(x)).collect()),
            good_prime_sample: u.good_prime_sample.as_ref().map(|g| GoodPrimeWire {
                p: g.p,
                basis: g.basis.clone(),
                ranks: g.ranks.clone(),
            }),
            good_primes: u.good_primes.clone(),
            skipped_primes: u.skipped_primes.clone(),
        }
    }
}

impl From<&RFVerdict> for VerdictWire {
    fn from(v: &RFVerdict) -> Self {
        VerdictWire {
            delta: v.delta,
            d_upper: v.d_upper,
            exponent_interval: v.exponent_interval,
            tight: v.tight,
            delta_height: v.delta_height,
            upper: (&v.upper).into(),
        }
    }
}

impl From<&LowerBoundCertificate> for CertificateWire {
    fn from(c: &LowerBoundCertificate) -> Self {
        CertificateWire {
            v: ints(&c.v),
            d: c.d,
            power: c.power,
            integral: c.is_integral(),
            terms: c
                .terms
                .iter()
                .map(|t| TermWire {
                    rows: t.rows.clone(),
                    cols: t.cols.clone(),
                    multiplier: t.multiplier.clone(),
                    coeff: Rat(t.coeff.clone()),
                })
                .collect(),
        }
    }
}

impl CertificateWire {
    pub fn to_core(&self) -> LowerBoundCertificate {
        LowerBoundCertificate {
            v: bigs(&self.v),
            d: self.d,
            power: self.power,
            terms: self
                .terms
                .iter()
                .map(|t| CertTerm {
                    rows: t.rows.clone(),
                    cols: t.cols.clone(),
                    multiplier: t.multiplier.clone(),
                    coeff: t.coeff.0.clone(),
                })
                .collect(),
        }
    }
}

impl WitnessWire {
    pub fn new(kappa: Option<u64>, v: &[BigInt], value: &BigInt, w: &DivisibilityWitness) -> Self {
        WitnessWire {
            kappa,
            v: ints(v),
            value: Int(value.clone()),
            p: w.p,
            k: w.k,
            a: ints(&w.a),
            lattice_b: w.lattice_b.basis_vectors().iter().map(|x| ints(x)).collect(),
            lattice_d: w.lattice_d.basis_vectors().iter().map(|x| ints(x)).collect(),
        }
    }

    /// Recomputes the witness index from `(p, k, a)` and the stated lattices.
    pub fn check(&self, pres: &GroupPresentation) -> CliResult<()> {
        let lattice = |gens: &[Vec<Int>], dim: usize| {
            let gens: Vec<Vec<BigInt>> = gens.iter().map(|g| bigs(g)).collect();
            if gens.iter().any(|g| g.len() != dim) {
                return Err(CliError::Rejected(format!("lattice generator of the wrong length (expected {dim})")));
            }
            Ok(Sublattice::from_generators(dim, &gens))
        };
        let w = DivisibilityWitness {
            p: self.p,
            k: self.k,
            a: bigs(&self.a),
            index: self.value.0.clone(),
            lattice_b: lattice(&self.lattice_b, pres.m())?,
            lattice_d: lattice(&self.lattice_d, pres.n())?,
        };
        if self.v.len() != pres.n() || self.a.len() != pres.n() {
            return Err(CliError::Rejected("witness vectors do not match the center rank".into()));
        }
        w.verify(pres, &bigs(&self.v)).map_err(|e| CliError::Rejected(e.to_string()))
    }
}

fn reject(msg: impl Into<String>) -> CliError {
    CliError::Rejected(msg.into())
}

fn check_upper(pres: &GroupPresentation, v: &VerdictWire) -> CliResult<()> {
    let pencil = pres.pencil();
    let n = pres.n();
    let d = v.d_upper;
    match v.upper.method.as_str() {
        "rank_n1" => {
            if n != 1 || pres.matrices()[0].rank() != d {
                return Err(reject("d_upper is not the rank of the single matrix"));
            }
        }
        "binary_gcd_n2" => {
            if n != 2 {
                return Err(reject("binary method on a center of rank other than 2"));
            }
            let g = gcd_minors_binary(&pencil, d)?;
            let linear = rational_linear_factor(&g).map(|(h, _)| ints(&h));
            if g.is_zero() || !(g.is_constant() || linear.is_some()) || linear != v.upper.hyperplane_v {
                return Err(reject("the gcd of the d_upper minors is not constant or a power of the stated linear form"));
            }
        }
        "heuristic_interval" => {
            if v.upper.interval.map(|(lo, hi)| lo > hi || hi != d) != Some(false) {
                return Err(reject("heuristic interval inconsistent with d_upper"));
            }
        }
        other => return Err(reject(format!("unknown upper-bound method `{other}`"))),
    }
    if let Some(basis) = &v.upper.sample_basis {
        let rows: Vec<Vec<BigRational>> =
            basis.iter().map(|a| a.iter().map(|x| BigRational::from_integer(x.0.clone())).collect()).collect();
        if basis.len() != n || basis.iter().any(|a| a.len() != n) || rational_rank(&rows) != n {
            return Err(reject("sample basis does not span Q^n"));
        }
        if basis.iter().any(|a| pencil.evaluate(&bigs(a)).rank() > d) {
            return Err(reject("a sample basis vector has rank above d_upper"));
        }
    } else if v.upper.method == "heuristic_interval" {
        return Err(reject("heuristic upper bound without a sample basis"));
    }
    if let Some(g) = &v.upper.good_prime_sample {
        let p = g.p;
        nilrf_core::linalg::check_prime(p)?;
        if g.basis.len() != n || g.ranks.len() != n || rank_mod_p(&g.basis, p) != n {
            return Err(reject(format!("good-prime sample is not a basis of F_{p}^n")));
        }
        for (a, &r) in g.basis.iter().zip(&g.ranks) {
            let coeffs: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
            let m = pencil.evaluate(&coeffs);
            let rows: Vec<Vec<u64>> = m
                .to_rows()
                .iter()
                .map(|row| {
                    let pb = BigInt::from(p);
                    row.iter().map(|x| u64::try_from(((x % &pb) + &pb) % &pb).expect("reduced")).collect()
                })
                .collect();
            if rank_mod_p(&rows, p) != r || r > d {
                return Err(reject(format!("good-prime rank mismatch at p = {p}")));
            }
        }
    }
    Ok(())
}

fn check_analyze(pres: &GroupPresentation, body: &AnalyzeBody) -> CliResult<()> {
    let v = &body.verdict;
    if v.delta > v.d_upper || v.d_upper % 2 != 0 || v.exponent_interval != (v.delta + 1, v.d_upper + 1) {
        return Err(reject("inconsistent exponent interval"));
    }
    if v.tight != (v.delta == v.d_upper) {
        return Err(reject("tight flag disagrees with the interval"));
    }
    let cert = body.lower_certificate.to_core();
    if cert.d != v.delta || cert.v.len() != pres.n() || cert.v.iter().all(Zero::is_zero) {
        return Err(reject("lower-bound certificate does not match the verdict"));
    }
    if cert.power as usize != cert.d {
        return Err(reject("lower-bound certificate must use power d"));
    }
    cert.verify(&pres.pencil()).map_err(|e| reject(e.to_string()))?;
    check_upper(pres, v)?;
    for g in &body.growth {
        let scaled: Vec<BigInt> = cert.v.iter().map(|x| x * lcm_upto(g.kappa)).collect();
        if bigs(&g.v) != scaled {
            return Err(reject(format!("growth check for κ = {} is not at lcm(1..κ)·v", g.kappa)));
        }
        let bound = BigInt::from(g.kappa).pow(v.delta as u32 + 1);
        if g.bound.0 != bound {
            return Err(reject(format!("growth bound for κ = {} is not κ^(δ+1)", g.kappa)));
        }
        if let Some(w) = &g.witness {
            w.check(pres)?;
            if w.v != g.v || w.kappa != Some(g.kappa) {
                return Err(reject("growth witness is attached to the wrong vector"));
            }
        }
        let found = divisibility_at_most(pres, &scaled, &bound)?;
        let recorded = g.witness.as_ref().map(|w| &w.value.0);
        if g.exceeds != found.is_none() || recorded != found.as_ref().map(|(d, _)| d) {
            return Err(reject(format!("growth check for κ = {} does not reproduce", g.kappa)));
        }
    }
    Ok(())
}

fn check_divisibility(pres: &GroupPresentation, body: &DivisibilityBody) -> CliResult<()> {
    if body.witness.v != body.v || body.witness.value != body.value {
        return Err(reject("witness does not match the reported value"));
    }
    body.witness.check(pres)?;
    if let Some(o) = &body.oracle {
        let agrees = o.value.as_ref().filter(|x| x.0 <= BigInt::from(o.bound)).map(|x| x == &body.value);
        if o.agrees != agrees {
            return Err(reject("oracle agreement flag is inconsistent"));
        }
        if o.value.as_ref().is_some_and(|x| x.0 < body.value.0) {
            return Err(reject("oracle found a smaller quotient than the closed form"));
        }
    }
    if let Some(u) = &body.upper_primes {
        if u.value.as_ref().is_some_and(|x| x.0 < body.value.0) {
            return Err(reject("prime upper bound below the divisibility value"));
        }
    }
    Ok(())
}

impl Report {
    pub fn new(group: GroupFile, result: ReportBody, timing_ms: Option<BTreeMap<String, f64>>) -> Self {
        let group_sha256 = group.digest();
        Report { format: FORMAT.into(), tool: Tool::default(), group, group_sha256, result, timing_ms }
    }

    /// Re-verifies everything the report claims from the report alone.
    pub fn verify(&self) -> CliResult<()> {
        if self.format != FORMAT {
            return Err(reject(format!("unsupported format `{}`", self.format)));
        }
        if self.group.digest() != self.group_sha256 {
            return Err(reject("group digest mismatch"));
        }
        let pres = self.group.presentation()?;
        match &self.result {
            ReportBody::Analyze(b) => check_analyze(&pres, b),
            ReportBody::Divisibility(b) => check_divisibility(&pres, b),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
