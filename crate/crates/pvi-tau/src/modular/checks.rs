//! The numeric suite: every table cell and identity evaluated at seeded
//! sample points, reported as the worst normalised error per identity.

use super::complex::{Ctx, Cx};
use super::series::{eta, eta_vector, phi_from_etas, t_tau, theta, zeta_tau, ModularPoint, SeriesConfig};
use super::tables::{
    cc2_t, cc2_u, cc3_t1, cc3_t3, exact_table_report, mal_table, t1_matrix, t3_matrix, EtaImage, ExactTableReport, Mat,
    PhiAction, K_ELEMENT, U,
};
use super::ModularError;
use crate::cuspalg::{x_image, CuspMonomial, Generator, UnitConst};
use crate::exactfield::{rat, rint, Basis, FactoredForm, Rational};
use crate::Execution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub digits: usize,
    pub tolerance: f64,
    pub points: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { digits: 60, tolerance: 1e-40, points: 20, seed: 0x5eed_0601, execution: Execution::Parallel }
    }
}

/// Worst error of one identity over all points where it was evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub name: String,
    pub max_err: f64,
    pub samples: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModularReport {
    pub lines: Vec<CheckLine>,
    pub exact: ExactTableReport,
    pub tolerance: f64,
}

impl ModularReport {
    pub fn passed(&self) -> bool {
        self.exact.all() && self.lines.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> =
            self.exact.entries().iter().filter(|e| !e.1).map(|e| e.0.to_string()).collect();
        out.extend(self.lines.iter().filter(|l| !l.passed).map(|l| format!("{} ({:e})", l.name, l.max_err)));
        out
    }
}

impl fmt::Display for ModularReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in self.exact.entries() {
            writeln!(f, "{} {name} (exact)", if ok { "PASS" } else { "FAIL" })?;
        }
        for l in &self.lines {
            let tag = if l.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {} max error {:.2e} over {} points", l.name, l.max_err, l.samples)?;
        }
        Ok(())
    }
}

type Errors = Vec<(String, f64)>;

/// Base sample points: `Re τ ∈ [−1/2, 1/2]`, `Im τ ∈ [1/2, 2]`.
pub fn sample_points(seed: u64, n: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| (rng.gen_range(-0.5..0.5), rng.gen_range(0.5..2.0))).collect()
}

/// Points `τ` for which both `τ` and `mτ` have imaginary part `sin θ / c`:
/// `τ = (e^{iθ} − d)/c`, `θ ∈ [π/3, 2π/3]`.
fn paired_points(seed: u64, n: usize, m: &Mat) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (m[1][0] as u64).wrapping_mul(0x9e37_79b9));
    let [_, [c, d]] = *m;
    (0..n)
        .map(|_| {
            let th: f64 = rng.gen_range(std::f64::consts::FRAC_PI_3..2.0 * std::f64::consts::FRAC_PI_3);
            ((th.cos() - d as f64) / c as f64, th.sin() / c as f64)
        })
        .collect()
}

/// `e^{iπr} 2^s 3^u`.
fn unit_value(ctx: &mut Ctx, u: &UnitConst) -> Cx {
    let ph = ctx.root_of_unity(u.r());
    let (ln2, ln3) = (ctx.rln(&ctx.int(2)), ctx.rln(&ctx.int(3)));
    let s = ctx.rational(u.s());
    let t = ctx.rational(u.u());
    let e = ctx.radd(&ctx.rmul(&s, &ln2), &ctx.rmul(&t, &ln3));
    let m = ctx.rexp(&e);
    ctx.scale(&ph, &m)
}

fn monomial(ctx: &Ctx, vals: &[Cx], exps: &[i64]) -> Result<Cx, ModularError> {
    let mut acc = ctx.one();
    for (v, &e) in vals.iter().zip(exps) {
        if e != 0 {
            acc = ctx.mul(&acc, &ctx.powi(v, e)?);
        }
    }
    Ok(acc)
}

pub(crate) fn apply_action(ctx: &mut Ctx, a: &PhiAction, phi: &[Cx; 5]) -> Result<[Cx; 5], ModularError> {
    let mut out = Vec::with_capacity(5);
    for im in &a.0 {
        let u = unit_value(ctx, &im.unit);
        out.push(ctx.mul(&u, &monomial(ctx, phi, &im.exps)?));
    }
    Ok(out.try_into().expect("five"))
}

fn eta_image(ctx: &mut Ctx, im: &EtaImage, etas: &[Cx; 6], x: &Cx) -> Result<Cx, ModularError> {
    let u = unit_value(ctx, &UnitConst::new(im.phase.clone(), im.two.clone(), Rational::from_integer(0.into())));
    let m = monomial(ctx, etas, &im.exps)?;
    let xp = ctx.powi(x, im.x)?;
    Ok(ctx.mul(&u, &ctx.mul(&xp, &m)))
}

/// Principal-branch evaluation of a cusp monomial at a complex ζ.
pub fn cusp_value(ctx: &mut Ctx, m: &CuspMonomial, zeta: &Cx) -> Result<Cx, ModularError> {
    let mut acc = unit_value(ctx, m.unit());
    for b in Basis::ALL {
        let e = m.exponent(b);
        if e == &rint(0) {
            continue;
        }
        let (a, c) = b.linear();
        let f = ctx.add(&ctx.scale(zeta, &ctx.int(a)), &ctx.cint(c));
        let p = ctx.pow_rational(&f, e)?;
        acc = ctx.mul(&acc, &p);
    }
    Ok(acc)
}

fn factored_value(ctx: &mut Ctx, f: &FactoredForm, zeta: &Cx) -> Result<Cx, ModularError> {
    let lead = ctx.rational(f.lead());
    let mut acc = ctx.real(lead);
    for b in Basis::ALL {
        let e = f.exponent(b);
        if e != 0 {
            let (a, c) = b.linear();
            let v = ctx.add(&ctx.scale(zeta, &ctx.int(a)), &ctx.cint(c));
            acc = ctx.mul(&acc, &ctx.powi(&v, e)?);
        }
    }
    let mut r = ctx.cint(0);
    for c in f.remainder().coeffs().iter().rev() {
        let k = ctx.rational(&Rational::from_integer(c.clone()));
        r = ctx.add(&ctx.mul(&r, zeta), &ctx.real(k));
    }
    Ok(ctx.mul(&acc, &r))
}

/// Values of `X(u), X(v), X(τ0..τ4)` from the φ's.
pub fn generator_values(ctx: &mut Ctx, phi: &[Cx; 5]) -> Result<[Cx; 7], ModularError> {
    let mut out = Vec::with_capacity(7);
    for g in Generator::ALL {
        let f = g.phi_form();
        let exps: Vec<i64> = f.exponents.iter().map(|e| e.to_integer().try_into().expect("integer")).collect();
        let u = unit_value(ctx, &f.unit);
        out.push(ctx.mul(&u, &monomial(ctx, phi, &exps)?));
    }
    Ok(out.try_into().expect("seven"))
}

/// `Γ(1/4) / (2π^{3/4})` with `Γ(1/4)² = (2π)^{3/2} / AGM(1, √2)`.
pub fn eta_i_closed_form(ctx: &mut Ctx) -> astro_float::BigFloat {
    let two = ctx.int(2);
    let mut a = ctx.int(1);
    let mut b = ctx.rsqrt(&two);
    for _ in 0..64 {
        let na = ctx.rdiv(&ctx.radd(&a, &b), &two);
        let nb = ctx.rsqrt(&ctx.rmul(&a, &b));
        a = na;
        b = nb;
    }
    let pi = ctx.pi();
    let two_pi = ctx.rmul(&two, &pi);
    let two_pi_32 = ctx.rmul(&two_pi, &ctx.rsqrt(&two_pi));
    let gamma = ctx.rsqrt(&ctx.rdiv(&two_pi_32, &a));
    let ln_pi = ctx.rln(&pi);
    let pi34 = ctx.rexp(&ctx.rmul(&ctx.f64(0.75), &ln_pi));
    ctx.rdiv(&gamma, &ctx.rmul(&two, &pi34))
}

fn z(ctx: &Ctx, zeta: &Cx, a: i64, b: i64) -> Cx {
    ctx.add(&ctx.scale(zeta, &ctx.int(a)), &ctx.cint(b))
}

const SCALE_NAMES: [&str; 6] = ["1/2", "1", "3/2", "2", "3", "6"];

/// Every cell of the eta-level and φ-level tables for `T` and `U`, the eta
/// transformation laws, the theta-product lemma and the Hauptmodul
/// relations at one point.
pub fn check_tables(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint) -> Result<Errors, ModularError> {
    let mut out = Errors::new();
    let tau = pt.tau().clone();
    let etas = eta_vector(ctx, cfg, pt)?;
    let phi = phi_from_etas(ctx, &etas)?;

    // Eta transformation laws.
    let e1 = etas[1].clone();
    let shifted = pt.shifted(ctx, &rint(1))?;
    let lhs = eta(ctx, cfg, &shifted)?;
    let w12 = ctx.root_of_unity(&rat(1, 12));
    let rhs = ctx.mul(&w12, &e1);
    out.push(("dep:η(τ+1)".into(), ctx.abs_err(&lhs, &rhs)));
    let inv = pt.mobius(ctx, [[0, -1], [1, 0]])?;
    let lhs = eta(ctx, cfg, &inv)?;
    let root = ctx.sqrt(&ctx.mul(&ctx.neg(&ctx.i()), &tau))?;
    let rhs = ctx.mul(&root, &e1);
    out.push(("dep:η(−1/τ)".into(), ctx.abs_err(&lhs, &rhs)));
    let half = pt.shifted(ctx, &rat(1, 2))?;
    let lhs = eta(ctx, cfg, &half)?;
    let four = pt.scaled(ctx, &rint(4))?;
    let e4 = eta(ctx, cfg, &four)?;
    let w24 = ctx.root_of_unity(&rat(1, 24));
    let num = ctx.mul(&w24, &ctx.powi(&etas[3], 3)?);
    let rhs = ctx.div(&num, &ctx.mul(&e1, &e4))?;
    out.push(("dep:η(τ+1/2)".into(), ctx.abs_err(&lhs, &rhs)));

    // Theta products in terms of φ.
    let p = pt.nome(ctx);
    let p2 = ctx.mul(&p, &p);
    let w = ctx.root_of_unity(&rat(2, 3));
    let w2 = ctx.mul(&w, &w);
    let p_12 = ctx.exp_ipi(&ctx.scale(&tau, &ctx.rdiv(&ctx.int(1), &ctx.int(12))));
    let p_m6 = ctx.exp_ipi(&ctx.scale(&tau, &ctx.rdiv(&ctx.int(-1), &ctx.int(6))));
    let [f1, f2, f3, f4, f5] = phi.clone();
    let neg = |ctx: &Ctx, x: &Cx| ctx.neg(x);
    let pw = ctx.mul(&p, &w);
    let one_minus_w = ctx.sub(&ctx.one(), &w);
    let tvl: Vec<(&str, Cx, Cx)> = vec![
        ("θ(p;p²)", p.clone(), ctx.mul(&p_12, &f1)),
        ("θ(−1;p²)", ctx.cint(-1), ctx.mul(&ctx.cint(2), &ctx.mul(&p_m6, &f2))),
        ("θ(−p;p²)", neg(ctx, &p), ctx.div(&p_12, &ctx.mul(&f1, &f2))?),
        ("θ(pω;p²)", pw.clone(), ctx.mul(&p_12, &ctx.div(&f3, &f5)?)),
        ("θ(−ω;p²)", neg(ctx, &w), ctx.mul(&neg(ctx, &w2), &ctx.mul(&p_m6, &ctx.div(&f4, &f5)?))),
        ("θ(ω;p²)", w.clone(), ctx.mul(&one_minus_w, &ctx.mul(&p_m6, &f5))),
        ("θ(−pω;p²)", neg(ctx, &pw), ctx.mul(&p_12, &ctx.div(&ctx.mul(&f5, &f5), &ctx.mul(&f3, &f4))?)),
    ];
    for (name, x, rhs) in tvl {
        let lhs = theta(ctx, cfg, &x, &p2)?;
        out.push((format!("tvl:{name}"), ctx.abs_err(&lhs, &rhs)));
    }

    // T and U on [k/2] and on φ.
    let table = mal_table();
    let x = ctx.sqrt(&ctx.mul(&ctx.neg(&ctx.i()), &z(ctx, &tau, 3, -2)))?;
    let none = ctx.one();
    for (row, (name, m, act)) in [("T", [[1, 1], [0, 1]], cc2_t()), ("U", U, cc2_u())].into_iter().enumerate() {
        let moved = pt.mobius(ctx, m)?;
        let etas_m = eta_vector(ctx, cfg, &moved)?;
        let xv = if row == 0 { &none } else { &x };
        for k in 0..6 {
            let rhs = eta_image(ctx, &table[row][k], &etas, xv)?;
            out.push((format!("mal:{name}[{}]", SCALE_NAMES[k]), ctx.abs_err(&etas_m[k], &rhs)));
        }
        let phi_m = phi_from_etas(ctx, &etas_m)?;
        let rhs = apply_action(ctx, &act, &phi)?;
        for j in 0..5 {
            out.push((format!("cc2:{name}φ{}", j + 1), ctx.abs_err(&phi_m[j], &rhs[j])));
        }
    }

    // ζ and t as theta quotients, and their relation to φ.
    let zeta = zeta_tau(ctx, cfg, pt)?;
    let t = t_tau(ctx, cfg, pt)?;
    let tz = ctx.div(&ctx.mul(&zeta, &ctx.powi(&z(ctx, &zeta, 1, 2), 3)?), &ctx.powi(&z(ctx, &zeta, 2, 1), 3)?)?;
    out.push(("tz".into(), ctx.abs_err(&t, &tz)));
    let linear: [(&str, (i64, i64), i64, [i64; 5]); 5] = [
        ("ζ", (1, 0), -2, [1, 2, -1, -2, 3]),
        ("ζ+1", (1, 1), -1, [2, 1, -2, -1, 3]),
        ("ζ−1", (1, -1), -3, [2, 1, 2, -1, 1]),
        ("ζ+2", (1, 2), 6, [1, 2, -1, 2, 1]),
        ("2ζ+1", (2, 1), -3, [0, 0, -4, -4, 10]),
    ];
    for (name, (a, b), c, e) in linear {
        let lhs = z(ctx, &zeta, a, b);
        let rhs = ctx.scale(&monomial(ctx, &phi, &e)?, &ctx.int(c));
        out.push((format!("zpl:{name}"), ctx.abs_err(&lhs, &rhs)));
    }
    let powers: [(&str, usize, i64, Rational, [i64; 5]); 5] = [
        ("φ1^12", 0, 12, rint(16), [-3, 6, 2, -1, -1]),
        ("φ2^12", 1, 12, rat(-1, 256), [6, -3, -1, 2, -1]),
        ("φ3^12", 2, 12, rat(1, 729), [-1, -4, 4, 1, 1]),
        ("φ4^12", 3, 12, rat(-1, 729), [-4, -1, 1, 4, 1]),
        ("φ5^6", 4, 6, rat(1, 27), [-1, -1, 1, 1, 1]),
    ];
    for (name, j, n, lead, e) in powers {
        let lhs = ctx.powi(&phi[j], n)?;
        let rhs = factored_value(ctx, &FactoredForm::monomial(lead, e), &zeta)?;
        out.push((format!("zpl:{name}"), ctx.abs_err(&lhs, &rhs)));
    }
    Ok(out)
}

/// The extension of the specialisation to `u, v, τ_j`: the defining
/// relations, the four unit identities, and agreement of the exact cusp
/// monomials (principal branches) with the eta-product values.
pub fn check_tep(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint) -> Result<Errors, ModularError> {
    let mut out = Errors::new();
    let etas = eta_vector(ctx, cfg, pt)?;
    let phi = phi_from_etas(ctx, &etas)?;
    let zeta = zeta_tau(ctx, cfg, pt)?;
    let t = t_tau(ctx, cfg, pt)?;
    let g = generator_values(ctx, &phi)?;
    let [u, v, t0, t1, t2, t3, t4] = g.clone();
    let one = ctx.one();

    let u2v4 = ctx.mul(&ctx.powi(&u, 2)?, &ctx.powi(&v, 4)?);
    out.push(("uvd:t = u²v⁴".into(), ctx.abs_err(&u2v4, &t)));
    let u4v2 = ctx.mul(&ctx.powi(&u, 4)?, &ctx.powi(&v, 2)?);
    let one_minus_t = ctx.sub(&one, &t);
    out.push(("uvd:1−t = u⁴v²".into(), ctx.abs_err(&u4v2, &one_minus_t)));

    let zc = |a, b| z(ctx, &zeta, a, b);
    let (zz, z1, zm1, z2, z21) = (zeta.clone(), zc(1, 1), zc(1, -1), zc(1, 2), zc(2, 1));
    let i = ctx.i();
    let uv = ctx.mul(&u, &v);
    let c1 = {
        let den = ctx.scale(&ctx.mul(&ctx.mul(&zz, &z1), &ctx.mul(&zm1, &z2)), &ctx.int(3));
        let pre = ctx.div(&ctx.mul(&i, &ctx.powi(&z21, 3)?), &den)?;
        let x = ctx.div(&ctx.mul(&ctx.mul(&uv, &uv), &ctx.mul(&t0, &t0)), &t2)?;
        ctx.mul(&pre, &x)
    };
    let c2 = {
        let x = ctx.div(&ctx.mul(&t1, &t1), &ctx.mul(&uv, &t2))?;
        ctx.mul(&ctx.neg(&i), &x)
    };
    let c3 = {
        let pre = ctx.div(&z21, &ctx.mul(&z1, &ctx.neg(&zm1)))?;
        ctx.mul(&pre, &ctx.div(&ctx.mul(&u, &ctx.mul(&t3, &t3)), &t2)?)
    };
    let c4 = {
        let pre = ctx.div(&z21, &ctx.mul(&zz, &z2))?;
        ctx.mul(&pre, &ctx.div(&ctx.mul(&v, &ctx.mul(&t4, &t4)), &t2)?)
    };
    for (k, c) in [c1, c2, c3, c4].iter().enumerate() {
        out.push((format!("xti:{}", k + 1), ctx.abs_err(c, &one)));
    }

    // Branch validator. The principal-branch monomial is single valued on
    // the cut ζ-plane, so it must agree with the eta product on the
    // reference domain Im ζ > 0; elsewhere the ratio is a root of unity of
    // order dividing the lcm of the exponent denominators.
    let reference = !zeta.im.is_negative();
    for (k, gen) in Generator::ALL.iter().enumerate() {
        let m = x_image(*gen);
        let exact = cusp_value(ctx, &m, &zeta)?;
        let err = if reference {
            ctx.abs_err(&g[k], &exact)
        } else {
            let ratio = ctx.div(&g[k], &exact)?;
            let n = exponent_lcm(&m);
            let r = ctx.powi(&ratio, n)?;
            ctx.abs_err(&r, &one)
        };
        out.push((format!("tep:branch {}", gen_name(*gen)), err));
    }
    let xu = x_image(Generator::U);
    let xv = x_image(Generator::V);
    let u2v4_exact = &xu.pow(2) * &xv.pow(4);
    let u4v2_exact = &xu.pow(4) * &xv.pow(2);
    for (name, m, want) in [("u²v⁴", u2v4_exact, t.clone()), ("u⁴v²", u4v2_exact, one_minus_t)] {
        let val = cusp_value(ctx, &m, &zeta)?;
        out.push((format!("tep:exact {name}"), ctx.abs_err(&val, &want)));
    }
    Ok(out)
}

fn exponent_lcm(m: &CuspMonomial) -> i64 {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    m.exponents().iter().fold(1i64, |acc, e| acc.lcm(&e.denom().to_i64().unwrap_or(1)))
}

/// Ratio eta product / principal monomial for each generator, in turns.
pub fn branch_ratios(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint) -> Result<[f64; 7], ModularError> {
    let phi = super::series::phi_all(ctx, cfg, pt)?;
    let zeta = zeta_tau(ctx, cfg, pt)?;
    let g = generator_values(ctx, &phi)?;
    let mut out = [0.0; 7];
    for (k, gen) in Generator::ALL.iter().enumerate() {
        let exact = cusp_value(ctx, &x_image(*gen), &zeta)?;
        let r = ctx.div(&g[k], &exact)?;
        let (a, b) = ctx.to_f64_pair(&r);
        out[k] = b.atan2(a) / std::f64::consts::TAU;
    }
    Ok(out)
}

/// Fails with `BranchMismatch` if some generator's eta product differs from
/// its exact monomial at `pt`.
pub fn validate_branches(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint, tol: f64) -> Result<(), ModularError> {
    let turns = branch_ratios(ctx, cfg, pt)?;
    for (k, gen) in Generator::ALL.iter().enumerate() {
        if turns[k].abs() > tol {
            return Err(ModularError::BranchMismatch { generator: gen_name(*gen), ratio_turns: turns[k] });
        }
    }
    Ok(())
}

fn gen_name(g: Generator) -> String {
    match g {
        Generator::U => "u".into(),
        Generator::V => "v".into(),
        Generator::Tau(j) => format!("τ{j}"),
    }
}

/// Checks needing `τ` and `mτ` for a matrix with large lower-left entry.
fn check_paired(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint, which: Paired) -> Result<Errors, ModularError> {
    let mut out = Errors::new();
    let m = which.matrix();
    let moved = pt.mobius(ctx, m)?;
    let e = eta_vector(ctx, cfg, pt)?;
    let phi = phi_from_etas(ctx, &e)?;
    let e = eta_vector(ctx, cfg, &moved)?;
    let phi_m = phi_from_etas(ctx, &e)?;
    let zeta = zeta_tau(ctx, cfg, pt)?;
    let zeta_m = zeta_tau(ctx, cfg, &moved)?;
    let (rhs_phi, rhs_zeta, tag) = match which {
        Paired::T1 => (apply_action(ctx, &cc3_t1(), &phi)?, ctx.recip(&zeta)?, "t1"),
        Paired::T3 => (apply_action(ctx, &cc3_t3(), &phi)?, ctx.sub(&ctx.neg(&zeta), &ctx.one()), "t3"),
        Paired::K => (phi.clone(), zeta.clone(), "K"),
    };
    let family = if which == Paired::K { "K" } else { "cc3" };
    for j in 0..5 {
        out.push((format!("{family}:{tag}φ{}", j + 1), ctx.abs_err(&phi_m[j], &rhs_phi[j])));
    }
    out.push((format!("hauptmodul:{tag}(ζ)"), ctx.abs_err(&zeta_m, &rhs_zeta)));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Paired {
    T1,
    T3,
    K,
}

impl Paired {
    const ALL: [Paired; 3] = [Paired::T1, Paired::T3, Paired::K];

    fn matrix(self) -> Mat {
        match self {
            Paired::T1 => t1_matrix(),
            Paired::T3 => t3_matrix(),
            Paired::K => K_ELEMENT,
        }
    }
}

/// Largest change in `η(sτ)`, `ζ`, `t` when the truncation is doubled.
fn truncation_check(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint) -> Result<Errors, ModularError> {
    let big = cfg.doubled();
    let a = eta_vector(ctx, cfg, pt)?;
    let b = eta_vector(ctx, &big, pt)?;
    let mut worst = 0f64;
    for k in 0..6 {
        worst = worst.max(ctx.abs_err(&a[k], &b[k]));
    }
    let (z1, z2) = (zeta_tau(ctx, cfg, pt)?, zeta_tau(ctx, &big, pt)?);
    worst = worst.max(ctx.abs_err(&z1, &z2));
    let (t1, t2) = (t_tau(ctx, cfg, pt)?, t_tau(ctx, &big, pt)?);
    worst = worst.max(ctx.abs_err(&t1, &t2));
    Ok(vec![("truncation doubling".into(), worst)])
}

enum Job {
    Base(f64, f64),
    Paired(Paired, f64, f64),
}

fn run_job(digits: usize, job: &Job) -> Result<Errors, ModularError> {
    let mut ctx = Ctx::new(digits)?;
    let cfg = SeriesConfig::new(digits);
    match *job {
        Job::Base(re, im) => {
            let pt = ModularPoint::from_f64(&mut ctx, re, im)?;
            let mut out = check_tables(&mut ctx, &cfg, &pt)?;
            out.extend(check_tep(&mut ctx, &cfg, &pt)?);
            out.extend(truncation_check(&mut ctx, &cfg, &pt)?);
            Ok(out)
        }
        Job::Paired(which, re, im) => {
            let pt = ModularPoint::from_f64(&mut ctx, re, im)?;
            check_paired(&mut ctx, &cfg, &pt, which)
        }
    }
}

/// Runs every numeric check at the configured points, plus the exact table
/// relations.
pub fn run_suite(cfg: &SuiteConfig) -> Result<ModularReport, ModularError> {
    let mut jobs: Vec<Job> = sample_points(cfg.seed, cfg.points).into_iter().map(|(a, b)| Job::Base(a, b)).collect();
    for which in Paired::ALL {
        jobs.extend(paired_points(cfg.seed, cfg.points, &which.matrix()).into_iter().map(|(a, b)| Job::Paired(which, a, b)));
    }
    let results = cfg.execution.map(&jobs, |j| run_job(cfg.digits, j));
    let mut agg: BTreeMap<String, (f64, usize)> = BTreeMap::new();
    let mut order: Vec<String> = Vec::new();
    for r in results {
        for (name, err) in r? {
            let e = agg.entry(name.clone()).or_insert_with(|| {
                order.push(name.clone());
                (0.0, 0)
            });
            e.0 = if err.is_nan() { f64::INFINITY } else { e.0.max(err) };
            e.1 += 1;
        }
    }
    let lines = order
        .into_iter()
        .map(|name| {
            let (max_err, samples) = agg[&name];
            CheckLine { passed: max_err < cfg.tolerance, name, max_err, samples }
        })
        .collect();
    Ok(ModularReport { lines, exact: exact_table_report(), tolerance: cfg.tolerance })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point_tables() {
        let mut ctx = Ctx::new(60).unwrap();
        let cfg = SeriesConfig::new(60);
        let pt = ModularPoint::from_f64(&mut ctx, 0.1, 0.8).unwrap();
        for (name, err) in check_tables(&mut ctx, &cfg, &pt).unwrap() {
            assert!(err < 1e-40, "{name}: {err:e}");
        }
    }

    #[test]
    fn single_point_tep() {
        let mut ctx = Ctx::new(60).unwrap();
        let cfg = SeriesConfig::new(60);
        let pt = ModularPoint::from_f64(&mut ctx, -0.2, 1.1).unwrap();
        let errs = check_tep(&mut ctx, &cfg, &pt).unwrap();
        for (name, err) in &errs {
            println!("{name}: {err:e}");
        }
        for (name, err) in errs {
            assert!(err < 1e-40, "{name}: {err:e}");
        }
    }

    #[test]
    fn branches_on_reference_domain() {
        let mut ctx = Ctx::new(60).unwrap();
        let cfg = SeriesConfig::new(60);
        // Im ζ > 0 here.
        let pt = ModularPoint::from_f64(&mut ctx, 0.097, 0.829).unwrap();
        validate_branches(&mut ctx, &cfg, &pt, 1e-30).unwrap();
        // Im ζ < 0: the principal monomials jump by roots of unity.
        let pt = ModularPoint::from_f64(&mut ctx, -0.098, 0.621).unwrap();
        match validate_branches(&mut ctx, &cfg, &pt, 1e-30) {
            Err(ModularError::BranchMismatch { ratio_turns, .. }) => {
                let k = ratio_turns * 12.0;
                assert!((k - k.round()).abs() < 1e-20, "{ratio_turns}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(sample_points(7, 5), sample_points(7, 5));
        for (re, im) in sample_points(7, 50) {
            assert!((-0.5..0.5).contains(&re) && (0.5..2.0).contains(&im));
        }
        for (_, im) in paired_points(7, 10, &t1_matrix()) {
            assert!(im > 0.0);
        }
    }
}
