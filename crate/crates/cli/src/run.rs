use std::fmt::Display;
use std::sync::Arc;
use std::time::Instant;

use carlitz::annih::{
    auxiliary_l_search, choose_modulus_m, jump_r, nu_phi, qm_degrees, qm_search, root_divisibility, verify_aux,
    verify_congruence_prop21, verify_qm, y_element, CyclicSetting, ExponentRange, QmCertificate, SearchCaps,
};
use carlitz::classfield::{antidiagonal_subfield, cyclic_subfield};
use carlitz::fieldpoly::{monic_enumerate, monic_irreducibles};
use carlitz::lfun::{zeta_numerator_euler, LFunctions, PrimeSet};
use carlitz::sinnott::{
    cyclic_index_coefficient, index_formula_rhs, sinnott_indices, sinnott_module, supported_on_divisors,
    verify_index_consistency,
};
use carlitz::units::{verify_limit_formula, verify_norm_relation, NORM_RELATION_TERMS};
use carlitz::{ray_class_group, AbelianFieldDatum, CarlitzError, Check, Fq, GroupRingElt, Poly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;

use crate::config::{CapsArgs, Command, FieldArgs, RunConfig};
use crate::output::Output;

/// Bad input; the process exits with status 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl From<CarlitzError> for InputError {
    fn from(e: CarlitzError) -> InputError {
        InputError(e.to_string())
    }
}

type Step = std::result::Result<Output, CarlitzError>;

pub fn run(cfg: &RunConfig) -> Result<Output, InputError> {
    let f = Fq::new(cfg.q)?;
    match &cfg.command {
        Command::Lfun { moduli } => Ok(each(cfg, &parse_moduli(&f, moduli)?, lfun)),
        Command::Klf { moduli } => {
            let mut ns = Vec::new();
            for m in parse_moduli(&f, moduli)? {
                ns.extend((1..=m.deg()).flat_map(|d| monic_enumerate(&f, d, &Poly::zero(&f))).filter(|n| n.divides(&m)));
            }
            Ok(each(cfg, &ns, |n| {
                let mut out = Output::default();
                out.checks(verify_limit_formula(n)?);
                Ok(out)
            }))
        }
        Command::Normrel { max_degree } => {
            let terms = cfg.precision.unwrap_or(NORM_RELATION_TERMS);
            if terms < 1 {
                return Err(InputError(format!("precision {terms} must be positive")));
            }
            let mut pairs = Vec::new();
            for dp in 1..=*max_degree {
                for p in monic_irreducibles(&f, dp) {
                    for dn in 0..=max_degree - dp {
                        pairs.extend(monic_enumerate(&f, dn, &Poly::zero(&f)).into_iter().map(|n| (n, p.clone())));
                    }
                }
            }
            Ok(each(cfg, &pairs, |(n, p)| {
                let mut out = Output::default();
                out.check(verify_norm_relation(n, p, terms)?);
                Ok(out)
            }))
        }
        Command::Sinnott { moduli, hm_three_quadratics } => {
            let mut ms = parse_moduli(&f, moduli)?;
            if *hm_three_quadratics {
                ms.push(monic_irreducibles(&f, 2).into_iter().fold(Poly::one(&f), |a, p| &a * &p));
            }
            let expect_two = *hm_three_quadratics && cfg.q == 3;
            let last = ms.len() - 1;
            let items: Vec<(usize, Poly)> = ms.into_iter().enumerate().collect();
            Ok(each(cfg, &items, |(i, m)| sinnott(m, expect_two && *i == last)))
        }
        Command::Index { moduli, antidiagonal } => {
            let mut fields: Vec<AbelianFieldDatum> =
                parse_moduli(&f, moduli)?.iter().map(full).collect::<Result<_, _>>()?;
            if let Some(pair) = antidiagonal {
                fields.push(antidiagonal_subfield(&parse(&f, &pair[0])?, &parse(&f, &pair[1])?)?);
            }
            Ok(each(cfg, &fields, index))
        }
        Command::Cyclic(args) => {
            let s = setting(&f, args)?;
            Ok(timed(cfg, || cyclic(&s)))
        }
        Command::Qsearch { field, caps } => {
            let s = setting(&f, field)?;
            Ok(timed(cfg, || qsearch(&s, *caps)))
        }
        Command::Congruence { field, caps, qm_prime } => {
            let s = setting(&f, field)?;
            let given = qm_prime.as_deref().map(|p| parse(&f, p)).transpose()?;
            Ok(timed(cfg, || congruence(&s, *caps, given.as_ref())))
        }
    }
}

/// Runs independent steps on the thread pool and concatenates their output in input order.
fn each<T: Sync>(cfg: &RunConfig, items: &[T], step: impl Fn(&T) -> Step + Sync) -> Output {
    let parts: Vec<Output> = items.par_iter().map(|x| timed(cfg, || step(x))).collect();
    let mut out = Output::default();
    parts.into_iter().for_each(|p| out.append(p));
    out
}

/// A failing step becomes a failed check carrying the error, so the rest of the report survives.
fn timed(cfg: &RunConfig, step: impl FnOnce() -> Step) -> Output {
    let start = Instant::now();
    let mut out = step().unwrap_or_else(|e| {
        let mut o = Output::default();
        o.check(Check::new("error", "", "no error", e.to_string(), false));
        o
    });
    if cfg.timings {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        out.records.iter_mut().for_each(|r| r.runtime_ms = Some(ms));
    }
    out
}

fn parse(f: &Fq, s: &str) -> Result<Poly, InputError> {
    Ok(Poly::parse(f, s)?)
}

fn parse_moduli(f: &Fq, moduli: &[String]) -> Result<Vec<Poly>, InputError> {
    moduli
        .iter()
        .map(|s| {
            let m = parse(f, s)?;
            if m.deg() == 0 {
                return Err(InputError(format!("modulus \"{s}\" must be nonconstant")));
            }
            Ok(m.monic())
        })
        .collect()
}

fn full(m: &Poly) -> Result<AbelianFieldDatum, CarlitzError> {
    Ok(AbelianFieldDatum::full(Arc::new(ray_class_group(m)?)))
}

fn render<T>(x: &GroupRingElt<T>) -> String
where
    T: Display + Clone + num_traits::Num + std::ops::Neg<Output = T>,
{
    fmt_list(x.coeffs())
}

fn lfun(m: &Poly) -> Step {
    let h = full(m)?;
    let lf = LFunctions::new(&h, None)?;
    let k = lf.cyclotomic();
    let inputs = format!("m = {}", m.encode());
    let mut out = Output::default();
    for c in lf.characters().iter().filter(|c| !c.chi.is_trivial()) {
        let v = lf.l_at_zero(&c.chi, &PrimeSet::empty())?;
        let at = format!("{inputs}, χ #{}, conductor {}", c.chi.index(), c.conductor.encode());
        out.value("L(χ, 0)", at, k.display(&v));
    }
    match lf.hr_product() {
        Ok(hr) => {
            out.value("hR", &inputs, &hr);
            out.check(Check::new("hR positive", &inputs, "> 0", hr.to_string(), hr.is_positive()));
        }
        Err(e) => out.check(Check::new("hR positive", &inputs, "> 0", e.to_string(), false)),
    }
    let chars = lf.zeta_numerator()?;
    let mut euler: Vec<BigRational> =
        zeta_numerator_euler(&h, chars.len() + 2)?.into_iter().map(BigRational::from_integer).collect();
    let mut padded = chars.clone();
    padded.resize(euler.len(), BigRational::from_integer(BigInt::from(0)));
    euler.truncate(padded.len());
    out.check(Check::equal("zeta numerator, characters vs Euler product", inputs, fmt_list(&euler), fmt_list(&padded)));
    Ok(out)
}

fn fmt_list<T: Display>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn sinnott(m: &Poly, expect_two: bool) -> Step {
    let l = full(m)?;
    let g = l.galois();
    let idx = sinnott_indices(&l, &sinnott_module(&l)?)?;
    let inputs = format!("q = {}, m = {}, |G| = {}", m.field().q(), m.encode(), g.order());
    let mut out = Output::default();
    out.value("[Z[G]:U′]", &inputs, &idx.r_index);
    out.value("[R_0:U′_0]", &inputs, &idx.r0_index);
    let shown = idx.r_index.to_string();
    if expect_two {
        out.check(Check::equal("[Z[G]:U′], three quadratics", &inputs, "2".into(), shown));
    } else if g.is_cyclic() {
        out.check(Check::equal("[Z[G]:U′], cyclic", &inputs, "1".into(), shown));
    } else {
        let ok = supported_on_divisors(&idx.r_index, g.order());
        out.check(Check::new("[Z[G]:U′] supported on divisors of |G|", &inputs, "true", shown, ok));
    }
    Ok(out)
}

fn index(l: &AbelianFieldDatum) -> Step {
    let mut out = Output::default();
    out.checks(verify_index_consistency(l)?);
    let rhs = index_formula_rhs(l)?;
    let inputs = format!("m = {}, [L:K] = {}", l.modulus().encode(), l.degree());
    out.value("w^([L:K]−1)", &inputs, &rhs.w_power);
    out.value("local product", &inputs, &rhs.local_product);
    out.value("[Z[G]:U′]", &inputs, &rhs.ru_index);
    out.value("d(L)", &inputs, rhs.d_l.value.map_or("unknown".into(), |d| d.to_string()));
    out.value("hR", &inputs, &rhs.hr_product);
    let shown = rhs.h_coefficient.as_ref().map_or("unknown".into(), ToString::to_string);
    out.value("[O_L^×:C_L]/h_L", &inputs, &shown);
    // only cyclic p-power fields have the second assembly
    if let Ok(b) = cyclic_index_coefficient(l) {
        let pass = rhs.h_coefficient == Some(b.clone());
        out.check(Check::new("index formula, two assemblies", inputs, b.to_string(), shown, pass));
    }
    Ok(out)
}

/// The cyclic field described by the arguments, with default primes when none are given.
fn setting(f: &Fq, a: &FieldArgs) -> Result<CyclicSetting, InputError> {
    let want = if a.antidiagonal { 2 } else { a.s };
    let primes = if a.ramified.is_empty() {
        default_primes(f, a.p, a.k, want, a.antidiagonal)?
    } else {
        a.ramified.iter().map(|s| parse(f, s).map(|p| p.monic())).collect::<Result<Vec<_>, _>>()?
    };
    let field = if a.antidiagonal {
        if primes.len() != 2 {
            return Err(InputError("--antidiagonal takes exactly two primes".into()));
        }
        antidiagonal_subfield(&primes[0], &primes[1])?
    } else {
        let weights = if a.weights.is_empty() { vec![1; primes.len()] } else { a.weights.clone() };
        cyclic_subfield(&primes, a.p, a.k, &weights)?
    };
    Ok(CyclicSetting::new(&field)?)
}

fn default_primes(f: &Fq, p: u64, k: u32, count: usize, avoid_t: bool) -> Result<Vec<Poly>, InputError> {
    if p < 2 {
        return Err(InputError(format!("p = {p} is not a prime")));
    }
    let pk = u128::from(p).checked_pow(k).ok_or_else(|| InputError("p^k overflows".into()))?;
    let q = u128::from(f.q());
    let mut out = Vec::new();
    let mut qd = 1u128;
    for d in 1..=24usize {
        qd = qd * q % pk;
        if qd != 1 {
            continue;
        }
        let t = Poly::t(f);
        out.extend(monic_irreducibles(f, d).into_iter().filter(|x| !(avoid_t && *x == t)));
        if out.len() >= count {
            out.truncate(count);
            return Ok(out);
        }
    }
    Err(InputError(format!("no {count} primes of degree ≤ 24 with {p}^{k} | q^d − 1; pass --ramified")))
}

fn cyclic(s: &CyclicSetting) -> Step {
    let q = u64::from(s.field.field().q());
    let r = &s.ram;
    let inputs = format!("q = {q}, p = {}, k = {}, s = {}", r.p, r.k, r.s());
    let mut out = Output::default();
    out.value("degree", &inputs, s.degree());
    let profile: Vec<String> = r.t.iter().zip(&r.n).map(|(t, n)| format!("(t = {t}, n = {n})")).collect();
    out.value("profile", &inputs, profile.join(" "));
    let np = nu_phi(r, Some(q - 1));
    out.value("ν", &inputs, np.nu);
    out.value("φ", &inputs, &np.phi);
    out.value("[L:L̃]", &inputs, np.l_over_tilde);
    if let Some(c) = &np.extended_index_coefficient {
        out.value("w^(p^k−1)/φ", &inputs, c);
    }
    let lhs = BigInt::from(r.p).pow(np.nu as u32) * BigInt::from(np.l_over_tilde);
    out.check(Check::new("p^ν·[L:L̃] = φ", &inputs, np.phi.to_string(), lhs.to_string(), np.identity_holds));
    let jumps: Vec<String> = r.jumps().iter().map(ToString::to_string).collect();
    out.value("jumps", &inputs, jumps.join(", "));
    let (rj, rc) = jump_r(r);
    out.check(Check::equal("r from jumps = closed form", &inputs, rc.to_string(), rj.to_string()));
    for (range, label) in [(ExponentRange::ThroughSMinusOne, "y to s−1"), (ExponentRange::ThroughS, "y to s")] {
        out.value(label, &inputs, render(&y_element(s, range, false)));
        let rr = root_divisibility(s, range)?;
        let root = rr.root.as_ref().map_or("none".into(), render);
        out.value(&format!("root, {label}"), &inputs, &root);
        let verdict = format!("unique = {}, in (1/w)Z = {}", rr.unique, rr.in_lattice);
        if range == ExponentRange::ThroughSMinusOne {
            out.check(Check::equal(
                "unique root of y·x = l(η) in (1/w)Z",
                &inputs,
                "unique = true, in (1/w)Z = true".into(),
                verdict,
            ));
        } else {
            out.value(&format!("solvability, {label}"), &inputs, verdict);
        }
    }
    Ok(out)
}

fn qsearch(s: &CyclicSetting, caps: CapsArgs) -> Step {
    let q = u64::from(s.field.field().q());
    let inputs = format!("q = {q}, p = {}, k = {}, s = {}", s.ram.p, s.ram.k, s.ram.s());
    let mut out = Output::default();
    let c = choose_modulus_m(q, s.ram.p, s.ram.k, s.ram.s())?;
    out.value("m", &inputs, c.m);
    out.value("d", &inputs, c.d);
    out.value("f", &inputs, c.f);
    out.value("normalized by", &inputs, c.normalized_by);
    out.check(Check::new("m | f/d", &inputs, "true", format!("m = {}, f = {}, d = {}", c.m, c.f, c.d), c.m_divides_f_over_d));
    let degrees: Vec<String> = qm_degrees(q, c.m, caps.degree_cap).iter().map(ToString::to_string).collect();
    out.value("Q_m degrees below cap", &inputs, if degrees.is_empty() { "none".into() } else { degrees.join(", ") });
    let caps = SearchCaps::from(caps);
    let certs = qm_search(s, c.m, caps);
    if certs.is_empty() {
        out.value("Q_m primes", &inputs, format!("none below degree cap {}", caps.degree_cap));
    }
    for cert in &certs {
        out.value("Q_m prime", &inputs, cert.prime.encode());
        out.checks(verify_qm(s, cert)?);
        match auxiliary_l_search(s, cert, caps) {
            Some(aux) => {
                out.value("auxiliary l", format!("Q = {}", cert.prime.encode()), aux.prime.encode());
                out.checks(verify_aux(s, &aux)?);
            }
            None => out.value("auxiliary l", format!("Q = {}", cert.prime.encode()), "none below caps"),
        }
    }
    Ok(out)
}

fn congruence(s: &CyclicSetting, caps: CapsArgs, given: Option<&Poly>) -> Step {
    let q = u64::from(s.field.field().q());
    let inputs = format!("q = {q}, p = {}, k = {}, s = {}", s.ram.p, s.ram.k, s.ram.s());
    let m = choose_modulus_m(q, s.ram.p, s.ram.k, s.ram.s())?.m;
    let mut out = Output::default();
    let cert = match given {
        // the claimed flags are re-derived by verify_qm below
        Some(p) => QmCertificate {
            prime: p.monic(),
            m,
            norm_congruence: true,
            splits_completely: true,
            power_residues: vec![true; s.ram.s()],
        },
        None => match qm_search(s, m, caps.into()).into_iter().next() {
            Some(c) => c,
            None => {
                out.value("Q_m primes", &inputs, format!("none below degree cap {}", caps.degree_cap));
                return Ok(out);
            }
        },
    };
    out.value("Q_m prime", &inputs, cert.prime.encode());
    let verified = verify_qm(s, &cert)?;
    let ok = verified.all_pass();
    out.checks(verified);
    if !ok {
        return Ok(out);
    }
    let c = verify_congruence_prop21(s, &cert)?;
    let at = format!("Q = {}, m = {}", c.q_prime.encode(), c.m);
    out.value("residue degree f", &at, c.f);
    out.value("components", &at, c.components);
    out.check(Check::new(
        "η̂ congruence, some labeling",
        &at,
        "at least 1",
        format!("{} of {} labelings", c.passing, c.labelings),
        c.passing > 0,
    ));
    out.check(Check::new("η^τ in F_Q", &at, "true", c.eta_in_residue_field.to_string(), c.eta_in_residue_field));
    out.check(Check::new("Π_τ η^τ ≡ 1", &at, "true", c.norm_is_one.to_string(), c.norm_is_one));
    Ok(out)
}
