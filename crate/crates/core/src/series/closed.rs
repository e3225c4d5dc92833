//! Closed forms of the ω-weighted series, assembled from ζ, prime zeta,
//! shifted prime zeta, L-functions and Euler products over the prime table.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{
    compute_ap, geometric_tail, ln_1p, pow_neg, zeta::zeta, BoundKind, Bounded, ComplexS, PrimeSums,
    SeriesResult, SeriesWeight,
};
use crate::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::functions::{Catalog, Exponent, FnSpec};
use crate::reduce::{par_tree_sum, rounding_bound};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_PRIME_LIMIT: u64 = 1_000_000;

/// A multiplicative `f` together with the abscissa above which the caller
/// asserts its series converge.
#[derive(Clone)]
pub struct GenericSeries {
    pub spec: FnSpec,
    pub sigma_floor: f64,
}

#[derive(Clone)]
pub enum SeriesIdentity {
    /// `Σ ω(n)/n^s = ζ(s) P(s)`
    ZetaP,
    /// `Σ ω(n)λ(n)/n^s = −ζ(2s)/ζ(s) P(s)`
    Liouville,
    /// `Σ ω(n)χ(n)/n^s = L(s, χ) Σ_p χ(p)/p^s`
    DirichletChi(Arc<CharacterTable>),
    /// `Σ |μ(n)|ω(n)/n^s = ζ(s)/ζ(2s) P(s, 1)`
    AbsMu,
    /// `Σ μ(n)ω(n)/n^s = −P(s, −1)/ζ(s)`
    Mu,
    /// `Σ ω(n)2^ω(n)/n^s = 2ζ(s)²/ζ(2s) P(s, 1)`
    TwoOmega,
    /// `Σ ω(n)J_k(n)/n^s = ζ(s−k)/ζ(s) Σ_p (p^k − 1)/(p^s − 1)`
    Jordan(Exponent),
    /// `Σ ω(n)σ_k(n)/n^s = ζ(s)ζ(s−k)(P(s) + P(s−k) − P(2s−k))`
    SigmaK(Exponent),
    /// `Σ ω(n)d(n²)/n^s = ζ(s)³/ζ(2s) (4P(s, 1) − P(s))`
    DNsq,
    /// `Σ ω(n)d(n)²/n^s = ζ(s)⁴/ζ(2s) (8P(s, 1) + P(2s) − 4P(s))`
    DSq,
    /// `Σ ω(n)²/n^s = ζ(s)(P(s)² + P(s) − P(2s))`
    OmegaSq,
    /// `Σ ω(n)f(n)/n^s = ∏_p(1 + a_p) Σ_p a_p/(1 + a_p)`
    InfMain(GenericSeries),
    /// Completely multiplicative `f`: `∏_p(1 − f(p)/p^s)^{-1} Σ_p f(p)/p^s`
    Inf3(GenericSeries),
    /// `Σ |μ(n)|ω(n)f(n)/n^s = ∏_p(1 + f(p)/p^s) Σ_p f(p)/(p^s + f(p))`
    Inf5(GenericSeries),
    /// `Σ μ(n)ω(n)f(n)/n^s = ∏_p(1 − f(p)/p^s) Σ_p f(p)/(f(p) − p^s)`
    Inf6(GenericSeries),
    /// `Σ ω(n)²f(n)/n^s = ∏_p(1 + a_p) ((Σ_p a_p/(1+a_p))² + Σ_p a_p/(1+a_p)²)`
    OmegaSqGeneric(GenericSeries),
}

/// Parameters consumed by [`SeriesIdentity::from_id`].
#[derive(Clone, Default)]
pub struct SeriesParams {
    pub k: Option<Exponent>,
    pub chi: Option<Arc<CharacterTable>>,
    pub spec: Option<FnSpec>,
    pub sigma_floor: Option<f64>,
}

impl SeriesIdentity {
    pub const IDS: [&'static str; 16] = [
        "zetaP",
        "liouville",
        "dirichletChi",
        "absMu",
        "mu",
        "twoOmega",
        "jordan",
        "sigmaK",
        "dNsq",
        "dSq",
        "omegaSq",
        "infmain",
        "inf3",
        "inf5",
        "inf6",
        "omegaSqGeneric",
    ];

    pub fn from_id(id: &str, params: SeriesParams) -> Result<Self> {
        let id = Self::IDS
            .into_iter()
            .find(|x| x.eq_ignore_ascii_case(id))
            .ok_or_else(|| Error::Domain(format!("unknown series identity {id:?}")))?;
        let need = |what: &str| Error::Precondition(format!("{id} needs {what}"));
        let generic = |p: SeriesParams| -> Result<GenericSeries> {
            Ok(GenericSeries {
                spec: p.spec.ok_or_else(|| need("a function"))?,
                sigma_floor: p.sigma_floor.unwrap_or(1.0),
            })
        };
        Ok(match id {
            "zetaP" => Self::ZetaP,
            "liouville" => Self::Liouville,
            "dirichletChi" => Self::DirichletChi(params.chi.ok_or_else(|| need("a character"))?),
            "absMu" => Self::AbsMu,
            "mu" => Self::Mu,
            "twoOmega" => Self::TwoOmega,
            "jordan" => Self::Jordan(params.k.ok_or_else(|| need("k"))?),
            "sigmaK" => Self::SigmaK(params.k.ok_or_else(|| need("k"))?),
            "dNsq" => Self::DNsq,
            "dSq" => Self::DSq,
            "omegaSq" => Self::OmegaSq,
            "infmain" => Self::InfMain(generic(params)?),
            "inf3" => Self::Inf3(generic(params)?),
            "inf5" => Self::Inf5(generic(params)?),
            "inf6" => Self::Inf6(generic(params)?),
            _ => Self::OmegaSqGeneric(generic(params)?),
        })
    }

    pub fn id(&self) -> &'static str {
        match self {
            Self::ZetaP => "zetaP",
            Self::Liouville => "liouville",
            Self::DirichletChi(_) => "dirichletChi",
            Self::AbsMu => "absMu",
            Self::Mu => "mu",
            Self::TwoOmega => "twoOmega",
            Self::Jordan(_) => "jordan",
            Self::SigmaK(_) => "sigmaK",
            Self::DNsq => "dNsq",
            Self::DSq => "dSq",
            Self::OmegaSq => "omegaSq",
            Self::InfMain(_) => "infmain",
            Self::Inf3(_) => "inf3",
            Self::Inf5(_) => "inf5",
            Self::Inf6(_) => "inf6",
            Self::OmegaSqGeneric(_) => "omegaSqGeneric",
        }
    }

    /// Real part of `s` above which both sides are evaluated.
    pub fn abscissa(&self) -> f64 {
        match self {
            Self::Jordan(k) | Self::SigmaK(k) => 1f64.max(1.0 + k.as_complex().re),
            Self::InfMain(g) | Self::Inf3(g) | Self::Inf5(g) | Self::Inf6(g) | Self::OmegaSqGeneric(g) => {
                g.sigma_floor.max(1.0)
            }
            _ => 1.0,
        }
    }

    pub fn check_domain(&self, s: ComplexS) -> Result<()> {
        s.require_sigma_above(self.abscissa(), self.id())
    }

    /// The `f` and weight whose truncated series is the left-hand side.
    pub fn oracle_setup(&self) -> (FnSpec, SeriesWeight) {
        let b = FnSpec::builtin;
        match self {
            Self::ZetaP => (FnSpec::one(), SeriesWeight::Omega),
            Self::Liouville => (b(Catalog::Liouville), SeriesWeight::Omega),
            Self::DirichletChi(chi) => (b(Catalog::Character(Arc::clone(chi))), SeriesWeight::Omega),
            Self::AbsMu => (FnSpec::one(), SeriesWeight::AbsMuOmega),
            Self::Mu => (FnSpec::one(), SeriesWeight::MuOmega),
            Self::TwoOmega => (b(Catalog::TwoPowOmega), SeriesWeight::Omega),
            Self::Jordan(k) => (b(Catalog::Jordan(*k)), SeriesWeight::Omega),
            Self::SigmaK(k) => (b(Catalog::Sigma(*k)), SeriesWeight::Omega),
            Self::DNsq => (b(Catalog::DivisorCountOfSquare), SeriesWeight::Omega),
            Self::DSq => (b(Catalog::DivisorCountSquared), SeriesWeight::Omega),
            Self::OmegaSq => (FnSpec::one(), SeriesWeight::OmegaSq),
            Self::InfMain(g) | Self::Inf3(g) => (g.spec.clone(), SeriesWeight::Omega),
            Self::Inf5(g) => (g.spec.clone(), SeriesWeight::AbsMuOmega),
            Self::Inf6(g) => (g.spec.clone(), SeriesWeight::MuOmega),
            Self::OmegaSqGeneric(g) => (g.spec.clone(), SeriesWeight::OmegaSq),
        }
    }
}

impl fmt::Debug for SeriesIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DirichletChi(chi) => write!(f, "dirichletChi({})", chi.label()),
            Self::Jordan(k) | Self::SigmaK(k) => write!(f, "{}(k={k})", self.id()),
            Self::InfMain(g) | Self::Inf3(g) | Self::Inf5(g) | Self::Inf6(g) | Self::OmegaSqGeneric(g) => {
                write!(f, "{}({}, σ > {})", self.id(), g.spec.name(), g.sigma_floor)
            }
            _ => f.write_str(self.id()),
        }
    }
}

impl fmt::Display for SeriesIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy)]
enum Generic {
    Main,
    Cm,
    Squarefree,
    Mobius,
}

/// Per-prime sums of a generic Euler product: `ln ∏(1 + a_p)`,
/// `Σ a_p/(1 + a_p)` and `Σ a_p/(1 + a_p)²`.
struct GenericParts {
    euler: Bounded,
    first: Bounded,
    second: Bounded,
}

/// Evaluates closed forms over a fixed prime table.
pub struct SeriesEngine {
    primes: PrimeSums,
    tol: f64,
}

impl SeriesEngine {
    pub fn new(prime_limit: u64, tol: f64) -> Result<Self> {
        Ok(Self::with_primes(PrimeSums::new(prime_limit)?, tol))
    }

    pub fn with_primes(primes: PrimeSums, tol: f64) -> Self {
        Self { primes, tol }
    }

    pub fn primes(&self) -> &PrimeSums {
        &self.primes
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    fn part_tol(&self) -> f64 {
        self.tol / 16.0
    }

    pub fn zeta(&self, s: impl Into<ComplexS>) -> Result<SeriesResult> {
        zeta(s, self.part_tol())
    }

    pub fn prime_zeta(&self, s: impl Into<ComplexS>) -> Result<SeriesResult> {
        self.primes.prime_zeta(s.into(), self.part_tol())
    }

    pub fn shifted_prime_zeta(&self, s: impl Into<ComplexS>, a: Complex64) -> Result<SeriesResult> {
        self.primes.shifted_prime_zeta(s.into(), a, self.part_tol())
    }

    pub fn l_function(&self, s: impl Into<ComplexS>, chi: &CharacterTable) -> Result<SeriesResult> {
        super::l_function(s, chi, self.part_tol())
    }

    fn z(&self, s: Complex64) -> Result<Bounded> {
        Ok(self.zeta(s)?.bounded())
    }

    fn p(&self, s: Complex64) -> Result<Bounded> {
        Ok(self.prime_zeta(s)?.bounded())
    }

    fn p_shift(&self, s: Complex64, a: f64) -> Result<Bounded> {
        Ok(self.shifted_prime_zeta(s, Complex64::new(a, 0.0))?.bounded())
    }

    /// `∏_{p} (1 + a_p)` over the table with a heuristic tail estimate.
    pub fn euler_product(&self, spec: &FnSpec, s: impl Into<ComplexS>) -> Result<SeriesResult> {
        let s = s.into();
        s.require_sigma_above(1.0, "euler_product")?;
        let parts = self.generic_parts(spec, s, Generic::Main)?;
        Ok(parts.euler.into_result(self.primes.largest(), BoundKind::Heuristic, self.tol))
    }

    pub fn closed_form(&self, id: &SeriesIdentity, s: impl Into<ComplexS>) -> Result<SeriesResult> {
        let s = s.into();
        id.check_domain(s)?;
        let z = s.to_complex();
        let two = z * 2.0;
        let rigorous = |b: Bounded| b.into_result(self.primes.largest(), BoundKind::Rigorous, self.tol);
        let heuristic = |b: Bounded| b.into_result(self.primes.largest(), BoundKind::Heuristic, self.tol);
        Ok(match id {
            SeriesIdentity::ZetaP => rigorous(self.z(z)? * self.p(z)?),
            SeriesIdentity::Liouville => {
                rigorous(-(self.z(two)?.checked_div(self.z(z)?)? * self.p(z)?))
            }
            SeriesIdentity::DirichletChi(chi) => {
                let l = self.l_function(s, chi)?.bounded();
                rigorous(l * self.character_prime_sum(s, chi)?)
            }
            SeriesIdentity::AbsMu => {
                rigorous(self.z(z)?.checked_div(self.z(two)?)? * self.p_shift(z, 1.0)?)
            }
            SeriesIdentity::Mu => rigorous(-self.p_shift(z, -1.0)?.checked_div(self.z(z)?)?),
            SeriesIdentity::TwoOmega => {
                let zs = self.z(z)?;
                rigorous((zs * zs).scale(2.0).checked_div(self.z(two)?)? * self.p_shift(z, 1.0)?)
            }
            SeriesIdentity::Jordan(k) => {
                let k = k.as_complex();
                let ratio = self.z(z - k)?.checked_div(self.z(z)?)?;
                rigorous(ratio * self.jordan_prime_sum(s, k)?)
            }
            SeriesIdentity::SigmaK(k) => {
                let k = k.as_complex();
                let zeta = self.z(z)? * self.z(z - k)?;
                rigorous(zeta * (self.p(z)? + self.p(z - k)? - self.p(two - k)?))
            }
            SeriesIdentity::DNsq => {
                let zs = self.z(z)?;
                let shifted = self.p_shift(z, 1.0)?.scale(4.0) - self.p(z)?;
                rigorous(zs.powu(3).checked_div(self.z(two)?)? * shifted)
            }
            SeriesIdentity::DSq => {
                let zs = self.z(z)?;
                let primes = self.p_shift(z, 1.0)?.scale(8.0) + self.p(two)? - self.p(z)?.scale(4.0);
                rigorous(zs.powu(4).checked_div(self.z(two)?)? * primes)
            }
            SeriesIdentity::OmegaSq => {
                let p = self.p(z)?;
                rigorous(self.z(z)? * (p * p + p - self.p(two)?))
            }
            SeriesIdentity::InfMain(g) => {
                let parts = self.generic_parts(&g.spec, s, Generic::Main)?;
                heuristic(parts.euler * parts.first)
            }
            SeriesIdentity::Inf3(g) => {
                if !g.spec.is_completely_multiplicative() {
                    return Err(Error::Precondition(format!(
                        "inf3 needs a completely multiplicative f, got {}",
                        g.spec.name()
                    )));
                }
                let parts = self.generic_parts(&g.spec, s, Generic::Cm)?;
                heuristic(parts.euler * parts.first)
            }
            SeriesIdentity::Inf5(g) => {
                let parts = self.generic_parts(&g.spec, s, Generic::Squarefree)?;
                heuristic(parts.euler * parts.first)
            }
            SeriesIdentity::Inf6(g) => {
                let parts = self.generic_parts(&g.spec, s, Generic::Mobius)?;
                heuristic(parts.euler * parts.first)
            }
            SeriesIdentity::OmegaSqGeneric(g) => {
                let parts = self.generic_parts(&g.spec, s, Generic::Main)?;
                heuristic(parts.euler * (parts.first * parts.first + parts.second))
            }
        })
    }

    /// `Σ_p χ(p)/p^s`; the tail over `p > L` is bounded by `Σ_{p>L} p^{-σ}`.
    fn character_prime_sum(&self, s: ComplexS, chi: &CharacterTable) -> Result<Bounded> {
        let z = s.to_complex();
        let head = self.primes.bounded_sum(|p, lp| Ok(chi.value(p) * pow_neg(lp, z)))?;
        let t = self.primes.tail(Complex64::new(s.sigma, 0.0))?;
        Ok(head + Bounded::new(Complex64::new(0.0, 0.0), t.value.norm() + t.err))
    }

    /// `Σ_p (p^k − 1)/(p^s − 1)`, with the tail expanded as
    /// `Σ_{m ≥ 1} Σ_{p>L} (p^{-(ms−k)} − p^{-ms})`.
    fn jordan_prime_sum(&self, s: ComplexS, k: Complex64) -> Result<Bounded> {
        let z = s.to_complex();
        let head = self.primes.bounded_sum(|_, lp| {
            let x = pow_neg(lp, z);
            Ok((pow_neg(lp, z - k) - x) / (1.0 - x))
        })?;
        let l = self.primes.limit() as f64;
        let shrink = 1.0 - l.powf(-s.sigma);
        let rest_from = |m: u32| {
            let x = f64::from(m) * s.sigma - k.re;
            2.0 * (l.ln() * (1.0 - x)).exp() / (x - 1.0) / shrink
        };
        let mut value = Complex64::new(0.0, 0.0);
        let mut err = 0.0;
        let mut m = 1u32;
        loop {
            let rest = rest_from(m);
            if (m > 1 && rest <= 0.25 * f64::EPSILON * (head.value.norm() + value.norm())) || m > 256 {
                err += rest;
                break;
            }
            let mf = f64::from(m);
            let a = self.primes.tail(z * mf - k)?;
            let b = self.primes.tail(z * mf)?;
            value += a.value - b.value;
            err += a.err + b.err;
            m += 1;
        }
        Ok(head + Bounded::new(value, err))
    }

    fn generic_parts(&self, spec: &FnSpec, s: ComplexS, kind: Generic) -> Result<GenericParts> {
        let z = s.to_complex();
        let one = Complex64::new(1.0, 0.0);
        let tiny = 64.0 * f64::EPSILON;
        let singular = |p: u64, what: &str| {
            Error::Singular(format!("{what} vanishes at p = {p}, s = {s} for {}", spec.name()))
        };
        let primes = self.primes.primes();
        let rows: Vec<[Complex64; 3]> = primes
            .par_iter()
            .map(|&p| {
                let x = || -> Result<Complex64> {
                    Ok(spec.prime_power_complex(p, 1)? * pow_neg((p as f64).ln(), z))
                };
                Ok(match kind {
                    Generic::Main => {
                        let a = compute_ap(spec, p, s, self.part_tol())?.value;
                        let d = one + a;
                        [ln_1p(a), a / d, a / (d * d)]
                    }
                    Generic::Cm => {
                        let x = x()?;
                        if (one - x).norm() <= tiny {
                            return Err(singular(p, "1 − f(p)/p^s"));
                        }
                        [-ln_1p(-x), x, Complex64::new(0.0, 0.0)]
                    }
                    Generic::Squarefree => {
                        let x = x()?;
                        if (one + x).norm() <= tiny {
                            return Err(singular(p, "1 + f(p)/p^s"));
                        }
                        [ln_1p(x), x / (one + x), Complex64::new(0.0, 0.0)]
                    }
                    Generic::Mobius => {
                        let x = x()?;
                        if (one - x).norm() <= tiny {
                            return Err(singular(p, "1 − f(p)/p^s"));
                        }
                        [ln_1p(-x), -x / (one - x), Complex64::new(0.0, 0.0)]
                    }
                })
            })
            .collect::<Result<_>>()?;
        let column = |j: usize| -> Bounded {
            let terms: Vec<Complex64> = rows.iter().map(|r| r[j]).collect();
            let abs: Vec<f64> = terms.iter().map(|t| t.norm()).collect();
            let value = par_tree_sum(&terms);
            let err = rounding_bound(terms.len(), par_tree_sum(&abs)) + self.prime_tail_estimate(&abs);
            Bounded::new(value, err)
        };
        let log = column(0);
        let e = log.value.exp();
        let euler_err = e.norm() * log.err * log.err.exp() + 4.0 * f64::EPSILON * e.norm();
        Ok(GenericParts { euler: Bounded::new(e, euler_err), first: column(1), second: column(2) })
    }

    /// Heuristic `Σ_{p>L} |t_p|` from the last two decades of the table.
    fn prime_tail_estimate(&self, abs: &[f64]) -> f64 {
        let primes = self.primes.primes();
        let l = self.primes.limit();
        let i1 = primes.partition_point(|&p| p <= l / 10);
        let i0 = primes.partition_point(|&p| p <= l / 100);
        let d1 = par_tree_sum(&abs[i1..]);
        if l < 100 {
            return if d1 == 0.0 { 0.0 } else { f64::INFINITY };
        }
        geometric_tail(par_tree_sum(&abs[i0..i1]), d1)
    }
}

pub fn closed_form_series(
    id: &SeriesIdentity,
    s: impl Into<ComplexS>,
    prime_limit: u64,
    tol: f64,
) -> Result<SeriesResult> {
    let s = s.into();
    id.check_domain(s)?;
    SeriesEngine::new(prime_limit, tol)?.closed_form(id, s)
}
