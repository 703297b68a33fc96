//! Jacobian syzygies, their minimal resolution, the Milnor algebra and the
//! saturation defect module.
//!
//! All eliminations run modulo a word-size prime. [`Arithmetic::Rational`]
//! lifts every chosen generator and relation to `ℚ`, verifies it exactly and
//! re-checks the modular ranks against the lifted vectors, which certifies the
//! rational dimensions. [`Arithmetic::Prime`] skips the lifting and reports
//! values over `F_p`.

mod hilbert;
mod jacobian;
mod pipeline;
mod saturation;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

pub use hilbert::{betti_numerator, derivatives_at_one, format_poly, numerator_from_dims, HilbertData, IntPoly};
pub use jacobian::Prepared;
pub use saturation::SaturationProfile;

use crate::exactla::{FieldTag, LaError, PrimeField};
use crate::polycore::{basis_len, HomPoly};
use jacobian::to_polys;
use pipeline::{generator_pass, relation_pass, GenPass, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SyzError {
    #[error("curve degree {0} is below 2")]
    DegreeTooLow(u32),
    #[error("generator bound {bound} is below d - 1 = {min}")]
    BoundTooLow { bound: u32, min: u32 },
    #[error("mdr(f) = 0: the curve is a union of concurrent lines")]
    MdrZero,
    #[error("Milnor algebra did not stabilize: dim M(f)_(3d-5) = {at_3d5}, dim M(f)_(3d-4) = {at_3d4}")]
    NotStabilized { at_3d5: usize, at_3d4: usize },
    #[error("closure failure at generator bound {bound}: {detail}")]
    ClosureFailure { bound: u32, detail: String },
    #[error("saturation degree unstable at k = {k}")]
    SaturationUnstable { k: u32 },
    #[error(transparent)]
    Linear(#[from] LaError),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Which numbers are reported: certified rationals or values over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    Rational,
    Prime(PrimeField),
}

impl Arithmetic {
    pub(crate) fn field(&self) -> PrimeField {
        match self {
            Arithmetic::Rational => PrimeField::default_field(),
            Arithmetic::Prime(f) => *f,
        }
    }

    pub(crate) fn certify(&self) -> bool {
        matches!(self, Arithmetic::Rational)
    }

    pub fn tag(&self) -> FieldTag {
        match self {
            Arithmetic::Rational => FieldTag::Rational,
            Arithmetic::Prime(f) => FieldTag::Prime(f.modulus()),
        }
    }
}

/// A minimal Jacobian syzygy `a f_x + b f_y + c f_z = 0` with integer
/// coefficients (content 1).
#[derive(Clone, Debug, PartialEq)]
pub struct Syzygy {
    pub degree: u32,
    pub coords: [HomPoly; 3],
}

impl Syzygy {
    /// Exact check against the partials of `f`.
    pub fn annihilates(&self, f: &HomPoly) -> bool {
        let p = f.partials();
        let sum =
            (0..3).try_fold(HomPoly::zero(self.degree + f.degree() - 1), |acc, i| acc.add(&self.coords[i].mul(&p[i])));
        sum.map(|s| s.is_zero()).unwrap_or(false)
    }
}

impl Serialize for Syzygy {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Syzygy", 4)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("a", &self.coords[0].to_string())?;
        st.serialize_field("b", &self.coords[1].to_string())?;
        st.serialize_field("c", &self.coords[2].to_string())?;
        st.end()
    }
}

/// A minimal relation `Σ_j b_j ρ_j = 0` among the generators; `degree` is the
/// degree `δ` of the triple `Σ_j b_j ρ_j`, so that `e = d - 1 + δ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub degree: u32,
    pub coeffs: Vec<HomPoly>,
}

impl Relation {
    pub fn annihilates(&self, gens: &[Syzygy]) -> bool {
        (0..3).all(|i| {
            let mut acc = HomPoly::zero(self.degree);
            for (b, g) in self.coeffs.iter().zip(gens) {
                if b.is_zero() {
                    continue;
                }
                match acc.add(&b.mul(&g.coords[i])) {
                    Ok(s) => acc = s,
                    Err(_) => return false,
                }
            }
            acc.is_zero()
        })
    }
}

impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Relation", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("coeffs", &self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyProfile {
    pub d: u32,
    pub bound: u32,
    pub arithmetic: FieldTag,
    /// `dim D_0(f)_k` for `k <= bound`.
    pub dims: Vec<usize>,
    /// Number `μ_k` of minimal generators in degree `k`.
    pub mingens: Vec<usize>,
    pub mdr: Option<u32>,
    pub exponents: Vec<u32>,
    /// Exact generators; empty over a prime field.
    pub generators: Vec<Syzygy>,
    #[serde(skip)]
    pub(crate) pass: GenPass,
}

impl SyzygyProfile {
    pub fn m(&self) -> usize {
        self.exponents.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionData {
    pub d: u32,
    pub m: usize,
    pub exponents: Vec<u32>,
    /// `e_1 <= ... <= e_{m-2}`.
    pub relation_degrees: Vec<u32>,
    /// `ε_j = e_j - d - d_{j+2} + 1`.
    pub epsilons: Vec<i64>,
    pub tau: usize,
    pub free: bool,
}

impl ResolutionData {
    /// Degree `r = d_1` when all exponents are equal.
    pub fn common_exponent(&self) -> Option<u32> {
        let first = *self.exponents.first()?;
        self.exponents.iter().all(|&e| e == first).then_some(first)
    }

    pub fn betti_numerator(&self) -> IntPoly {
        betti_numerator(self.d, &self.exponents, &self.relation_degrees)
    }
}

/// Everything `resolve` computes, with the exact witnesses in rational mode.
#[derive(Clone, Debug, Serialize)]
pub struct Resolution {
    pub data: ResolutionData,
    pub profile: SyzygyProfile,
    pub hilbert: HilbertData,
    pub relations: Vec<Relation>,
    /// Generator bound that closed the computation.
    pub bound: u32,
    pub escalations: u32,
}

#[derive(Clone, Copy, Debug)]
pub struct ResolveOptions {
    pub arithmetic: Arithmetic,
    /// Generator bound; `2d` when unset.
    pub bound: Option<u32>,
    pub escalation_cap: u32,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions { arithmetic: Arithmetic::Rational, bound: None, escalation_cap: 3 }
    }
}

fn check_degree(f: &HomPoly) -> Result<u32, SyzError> {
    let d = f.degree();
    if d < 2 || f.is_zero() {
        return Err(SyzError::DegreeTooLow(d));
    }
    Ok(d)
}

fn build_profile(prep: &Prepared, arith: Arithmetic, bound: u32) -> Result<SyzygyProfile, SyzError> {
    let pass = generator_pass(prep, arith, bound)?;
    let mdr = pass.dims.iter().position(|&x| x > 0).map(|k| k as u32);
    let exponents = pass.gens.iter().map(|g| g.degree).collect();
    let generators = pass
        .gens
        .iter()
        .filter_map(|g| g.exact.as_ref().map(|e| (g.degree, e)))
        .map(|(k, e)| {
            let [a, b, c]: [HomPoly; 3] = to_polys(e, &[k, k, k]).try_into().expect("three blocks");
            Syzygy { degree: k, coords: [a, b, c] }
        })
        .collect();
    Ok(SyzygyProfile {
        d: prep.d,
        bound,
        arithmetic: arith.tag(),
        dims: pass.dims.clone(),
        mingens: pass.mingens.clone(),
        mdr,
        exponents,
        generators,
        pass,
    })
}

/// `dim D_0(f)_k`.
pub fn syz_dim(f: &HomPoly, k: u32, arith: Arithmetic) -> Result<usize, SyzError> {
    check_degree(f)?;
    let prep = Prepared::new(f);
    match arith {
        Arithmetic::Prime(field) => {
            let rank = prep.jacobian_mod(k, field).eliminate(false).len();
            Ok(3 * basis_len(k as usize) - rank)
        }
        Arithmetic::Rational => Ok(build_profile(&prep, arith, k)?.dims[k as usize]),
    }
}

/// `dim M(f)_k = dim S_k - dim (J_f)_k`.
pub fn milnor_dim(f: &HomPoly, k: u32, arith: Arithmetic) -> Result<usize, SyzError> {
    let d = check_degree(f)?;
    if k + 1 < d {
        return Ok(basis_len(k as usize));
    }
    let syz = syz_dim(f, k + 1 - d, arith)?;
    Ok(pipeline::milnor_from_syz(d, k, syz))
}

/// Minimal degree of a Jacobian relation. Fails with `MdrZero` for concurrent
/// lines.
pub fn mdr(f: &HomPoly, arith: Arithmetic) -> Result<u32, SyzError> {
    let d = check_degree(f)?;
    let prep = Prepared::new(f);
    for k in 0..d {
        let dim = match arith {
            Arithmetic::Prime(field) => 3 * basis_len(k as usize) - prep.jacobian_mod(k, field).eliminate(false).len(),
            Arithmetic::Rational => build_profile(&prep, arith, k)?.dims[k as usize],
        };
        if dim > 0 {
            return if k == 0 { Err(SyzError::MdrZero) } else { Ok(k) };
        }
    }
    Err(SyzError::Internal("no syzygy up to degree d - 1".into()))
}

pub fn syzygy_profile(f: &HomPoly, bound: u32, arith: Arithmetic) -> Result<SyzygyProfile, SyzError> {
    let d = check_degree(f)?;
    if bound + 1 < d {
        return Err(SyzError::BoundTooLow { bound, min: d - 1 });
    }
    build_profile(&Prepared::new(f), arith, bound)
}

fn hilbert_from_profile(d: u32, dims: &[usize]) -> Result<HilbertData, SyzError> {
    HilbertData::from_syz_dims(d, dims).map_err(|(at_3d5, at_3d4)| SyzError::NotStabilized { at_3d5, at_3d4 })
}

/// Hilbert function of `M(f)` up to `3d - 4` and the numerator of its series.
pub fn hilbert_data(f: &HomPoly, arith: Arithmetic) -> Result<HilbertData, SyzError> {
    let d = check_degree(f)?;
    let profile = build_profile(&Prepared::new(f), arith, 2 * d - 3)?;
    hilbert_from_profile(d, &profile.dims)
}

/// Total Tjurina number `dim M(f)_{3d-5}`, checked against `dim M(f)_{3d-4}`.
pub fn tau(f: &HomPoly, arith: Arithmetic) -> Result<usize, SyzError> {
    Ok(hilbert_data(f, arith)?.tau)
}

fn exact_relations(gens: &[Vector], rels: &[Vector]) -> Vec<Relation> {
    rels.iter()
        .filter_map(|r| {
            let e = r.exact.as_ref()?;
            let degs: Vec<u32> = gens.iter().take_while(|g| g.degree < r.degree).map(|g| r.degree - g.degree).collect();
            let mut coeffs = to_polys(e, &degs);
            for g in &gens[coeffs.len()..] {
                // generators of degree >= δ take no part
                coeffs.push(HomPoly::zero(r.degree.saturating_sub(g.degree)));
            }
            Some(Relation { degree: r.degree, coeffs })
        })
        .collect()
}

fn assemble(profile: &SyzygyProfile, rels: &[Vector], tau: usize) -> ResolutionData {
    let d = profile.d;
    let exponents = profile.exponents.clone();
    let relation_degrees: Vec<u32> = rels.iter().map(|r| d - 1 + r.degree).collect();
    let epsilons =
        relation_degrees.iter().enumerate().map(|(j, &e)| e as i64 - d as i64 - exponents[j + 2] as i64 + 1).collect();
    ResolutionData { d, m: exponents.len(), free: exponents.len() == 2, exponents, relation_degrees, epsilons, tau }
}

/// Relations among the generators of `profile`, scanned up to degree
/// `bound + 1`.
pub fn relations(f: &HomPoly, profile: &SyzygyProfile, arith: Arithmetic) -> Result<ResolutionData, SyzError> {
    let d = check_degree(f)?;
    let rels = relation_pass(&profile.pass.gens, arith, profile.bound + 1)?;
    let tau = if profile.dims.len() as u32 >= 2 * d - 2 {
        hilbert_from_profile(d, &profile.dims)?.tau
    } else {
        tau(f, arith)?
    };
    Ok(assemble(profile, &rels, tau))
}

/// Full resolution with closure check: the Betti numerator must equal the
/// Hilbert numerator. On failure the generator bound grows by `d`.
pub fn resolve(f: &HomPoly, opts: &ResolveOptions) -> Result<Resolution, SyzError> {
    let d = check_degree(f)?;
    let arith = opts.arithmetic;
    let prep = Prepared::new(f);
    let mut bound = opts.bound.unwrap_or(2 * d).max(2 * d - 3);
    if let Some(b) = opts.bound {
        if b + 1 < d {
            return Err(SyzError::BoundTooLow { bound: b, min: d - 1 });
        }
    }
    let mut escalations = 0;
    loop {
        let profile = build_profile(&prep, arith, bound)?;
        if profile.mdr == Some(0) {
            return Err(SyzError::MdrZero);
        }
        let hilbert = hilbert_from_profile(d, &profile.dims)?;
        let rels = relation_pass(&profile.pass.gens, arith, bound + 1)?;
        let data = assemble(&profile, &rels, hilbert.tau);
        let betti = data.betti_numerator();
        let detail = if betti != hilbert.numerator {
            Some(format!(
                "Betti numerator {} differs from Hilbert numerator {}",
                format_poly(&betti),
                format_poly(&hilbert.numerator)
            ))
        } else if data.m >= 2 && data.relation_degrees.len() != data.m - 2 {
            Some(format!("found {} relations for {} generators", data.relation_degrees.len(), data.m))
        } else if data.m < 2 {
            Some(format!("only {} generators", data.m))
        } else {
            None
        };
        match detail {
            None => {
                let relations = exact_relations(&profile.pass.gens, &rels);
                return Ok(Resolution { data, profile, hilbert, relations, bound, escalations });
            }
            Some(detail) if escalations >= opts.escalation_cap => {
                return Err(SyzError::ClosureFailure { bound, detail });
            }
            Some(_) => {
                escalations += 1;
                bound += d;
            }
        }
    }
}

/// Graded dimensions of `N(f)` for `0 <= k <= 3(d - 2)`, computed modulo the
/// working prime of `arith`.
pub fn saturation_profile(f: &HomPoly, arith: Arithmetic) -> Result<SaturationProfile, SyzError> {
    let hd = hilbert_data(f, arith)?;
    saturation::saturation(&Prepared::new(f), &hd.dims, arith.field())
}

/// Saturation from an already computed Hilbert table.
pub fn saturation_from_hilbert(
    f: &HomPoly,
    hilbert: &HilbertData,
    arith: Arithmetic,
) -> Result<SaturationProfile, SyzError> {
    saturation::saturation(&Prepared::new(f), &hilbert.dims, arith.field())
}
