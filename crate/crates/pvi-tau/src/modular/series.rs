//! Truncated products: θ(x; q), η(aτ), the eta quotients φ1..φ5, and the
//! theta quotients for ζ and t.

use super::complex::{Ctx, Cx};
use super::ModularError;
use crate::exactfield::{rat, rint, Rational};

/// Working precision and truncation rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesConfig {
    /// Decimal digits of working precision.
    pub digits: usize,
    /// Products stop once `|q^N| < 10^{−cutoff_digits}`.
    pub cutoff_digits: usize,
    /// Multiplier on the number of terms; 2 doubles the truncation.
    pub term_factor: usize,
    pub max_terms: usize,
}

impl SeriesConfig {
    pub fn new(digits: usize) -> Self {
        SeriesConfig { digits, cutoff_digits: digits + 10, term_factor: 1, max_terms: 400_000 }
    }

    pub fn doubled(self) -> Self {
        SeriesConfig { term_factor: self.term_factor * 2, ..self }
    }

    /// Terms needed for a nome of modulus `|q|`.
    pub fn terms(&self, abs_q: f64) -> Result<usize, ModularError> {
        if !(abs_q < 1.0) {
            return Err(ModularError::PrecisionLoss { abs_q, needed: usize::MAX });
        }
        if abs_q == 0.0 {
            return Ok(1);
        }
        let n = (self.cutoff_digits as f64 * std::f64::consts::LN_10 / -abs_q.ln()).ceil() as usize + 1;
        let n = n * self.term_factor;
        if n > self.max_terms {
            return Err(ModularError::PrecisionLoss { abs_q, needed: n });
        }
        Ok(n)
    }
}

impl Default for SeriesConfig {
    fn default() -> Self {
        SeriesConfig::new(60)
    }
}

/// A point of the upper half-plane.
#[derive(Clone, Debug)]
pub struct ModularPoint {
    tau: Cx,
}

impl ModularPoint {
    pub fn new(ctx: &mut Ctx, tau: Cx) -> Result<Self, ModularError> {
        if !tau.im.is_positive() {
            return Err(ModularError::NotInUpperHalfPlane(ctx.to_f64(&tau.im)));
        }
        Ok(ModularPoint { tau })
    }

    pub fn from_f64(ctx: &mut Ctx, re: f64, im: f64) -> Result<Self, ModularError> {
        let tau = ctx.cx(ctx.f64(re), ctx.f64(im));
        Self::new(ctx, tau)
    }

    pub fn tau(&self) -> &Cx {
        &self.tau
    }

    /// `(aτ + b)/(cτ + d)`.
    pub fn mobius(&self, ctx: &mut Ctx, m: [[i64; 2]; 2]) -> Result<Self, ModularError> {
        let [[a, b], [c, d]] = m;
        let num = ctx.add(&ctx.scale(&self.tau, &ctx.int(a)), &ctx.cint(b));
        let den = ctx.add(&ctx.scale(&self.tau, &ctx.int(c)), &ctx.cint(d));
        let tau = ctx.div(&num, &den)?;
        Self::new(ctx, tau)
    }

    /// `τ · r` for rational `r > 0`.
    pub fn scaled(&self, ctx: &mut Ctx, r: &Rational) -> Result<Self, ModularError> {
        let k = ctx.rational(r);
        let tau = ctx.scale(&self.tau, &k);
        Self::new(ctx, tau)
    }

    pub fn shifted(&self, ctx: &mut Ctx, r: &Rational) -> Result<Self, ModularError> {
        let k = ctx.rational(r);
        let tau = ctx.add(&self.tau, &ctx.real(k));
        Self::new(ctx, tau)
    }

    /// `p = e^{iπτ}`.
    pub fn nome(&self, ctx: &mut Ctx) -> Cx {
        ctx.exp_ipi(&self.tau)
    }
}

/// `θ(x; q) = ∏_{j≥0} (1 − q^j x)(1 − q^{j+1}/x)`.
pub fn theta(ctx: &mut Ctx, cfg: &SeriesConfig, x: &Cx, q: &Cx) -> Result<Cx, ModularError> {
    let aq = ctx.abs(q);
    let n = cfg.terms(ctx.to_f64(&aq))?;
    let one = ctx.one();
    let inv_x = ctx.recip(x)?;
    let mut qj = one.clone();
    let mut acc = one.clone();
    for _ in 0..n {
        let a = ctx.sub(&one, &ctx.mul(&qj, x));
        qj = ctx.mul(&qj, q);
        let b = ctx.sub(&one, &ctx.mul(&qj, &inv_x));
        acc = ctx.mul(&acc, &ctx.mul(&a, &b));
    }
    Ok(acc)
}

/// `η(τ) = e^{iπτ/12} ∏_{j≥1} (1 − e^{2πijτ})`.
pub fn eta(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint) -> Result<Cx, ModularError> {
    let tau = pt.tau();
    let pre = ctx.exp_ipi(&ctx.scale(tau, &ctx.rdiv(&ctx.int(1), &ctx.int(12))));
    let q = ctx.exp_ipi(&ctx.scale(tau, &ctx.int(2)));
    let aq = ctx.abs(&q);
    let n = cfg.terms(ctx.to_f64(&aq))?;
    let one = ctx.one();
    let mut qj = one.clone();
    let mut acc = pre;
    for _ in 0..n {
        qj = ctx.mul(&qj, &q);
        acc = ctx.mul(&acc, &ctx.sub(&one, &qj));
    }
    Ok(acc)
}

/// `η(rτ)`.
pub fn eta_at(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint, r: &Rational) -> Result<Cx, ModularError> {
    let p = pt.scaled(ctx, r)?;
    eta(ctx, cfg, &p)
}

/// The multipliers `k/2`, `k | 12`, in the order `1/2, 1, 3/2, 2, 3, 6`.
pub fn eta_scales() -> [Rational; 6] {
    [rat(1, 2), rint(1), rat(3, 2), rint(2), rint(3), rint(6)]
}

/// `[η(τ/2), η(τ), η(3τ/2), η(2τ), η(3τ), η(6τ)]`.
pub fn eta_vector(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint) -> Result<[Cx; 6], ModularError> {
    let mut out = Vec::with_capacity(6);
    for r in eta_scales() {
        out.push(eta_at(ctx, cfg, pt, &r)?);
    }
    Ok(out.try_into().expect("six values"))
}

/// `φ1..φ5` from the six eta values.
pub fn phi_from_etas(ctx: &Ctx, e: &[Cx; 6]) -> Result<[Cx; 5], ModularError> {
    let [h, one, three_h, two, three, six] = e;
    let sq = |z: &Cx| ctx.mul(z, z);
    Ok([
        ctx.div(&sq(h), &sq(one))?,
        ctx.div(&sq(two), &sq(one))?,
        ctx.div(three_h, h)?,
        ctx.div(six, two)?,
        ctx.div(three, one)?,
    ])
}

pub fn phi_all(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint) -> Result<[Cx; 5], ModularError> {
    let e = eta_vector(ctx, cfg, pt)?;
    phi_from_etas(ctx, &e)
}

/// `φ_i(τ)` for `i` in `1..=5`.
pub fn phi(ctx: &mut Ctx, cfg: &SeriesConfig, i: usize, pt: &ModularPoint) -> Result<Cx, ModularError> {
    if !(1..=5).contains(&i) {
        return Err(ModularError::BadIndex(i));
    }
    let mut v = phi_all(ctx, cfg, pt)?;
    Ok(std::mem::replace(&mut v[i - 1], ctx.one()))
}

/// `ζ = ω² θ(−1;p²) θ(−pω;p²) / (θ(−p;p²) θ(−ω;p²))`.
pub fn zeta_tau(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint) -> Result<Cx, ModularError> {
    let p = pt.nome(ctx);
    let p2 = ctx.mul(&p, &p);
    let w = ctx.root_of_unity(&rat(2, 3));
    let w2 = ctx.mul(&w, &w);
    let minus = |ctx: &Ctx, z: &Cx| ctx.neg(z);
    let m1 = ctx.cint(-1);
    let a = theta(ctx, cfg, &m1, &p2)?;
    let x = minus(ctx, &ctx.mul(&p, &w));
    let b = theta(ctx, cfg, &x, &p2)?;
    let x = minus(ctx, &p);
    let c = theta(ctx, cfg, &x, &p2)?;
    let x = minus(ctx, &w);
    let d = theta(ctx, cfg, &x, &p2)?;
    let num = ctx.mul(&w2, &ctx.mul(&a, &b));
    ctx.div(&num, &ctx.mul(&c, &d))
}

/// `t = p³ θ(−1;p⁶)⁴ / θ(−p³;p⁶)⁴`, i.e. the λ-function at `3τ`.
pub fn t_tau(ctx: &mut Ctx, cfg: &SeriesConfig, pt: &ModularPoint) -> Result<Cx, ModularError> {
    let p = pt.nome(ctx);
    let p3 = ctx.powi(&p, 3)?;
    let p6 = ctx.mul(&p3, &p3);
    let m1 = ctx.cint(-1);
    let a = theta(ctx, cfg, &m1, &p6)?;
    let x = ctx.neg(&p3);
    let b = theta(ctx, cfg, &x, &p6)?;
    Ok(ctx.mul(&p3, &ctx.powi(&ctx.div(&a, &b)?, 4)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eta_at_i_matches_gamma_closed_form() {
        let mut c = Ctx::new(60).unwrap();
        let cfg = SeriesConfig::default();
        let pt = ModularPoint::from_f64(&mut c, 0.0, 1.0).unwrap();
        let e = eta(&mut c, &cfg, &pt).unwrap();
        let want = super::super::checks::eta_i_closed_form(&mut c);
        assert!(c.abs_err(&e, &c.real(want)) < 1e-55);
        let (re, _) = c.to_f64_pair(&e);
        assert!((re - 0.768_225_4).abs() < 1e-7);
    }

    #[test]
    fn truncation_rule() {
        let cfg = SeriesConfig::default();
        assert!(cfg.terms(1.0).is_err());
        let n = cfg.terms(0.5).unwrap();
        assert!(0.5f64.powi(n as i32) < 1e-70);
        assert_eq!(cfg.doubled().terms(0.5).unwrap(), 2 * n);
    }

    #[test]
    fn rejects_lower_half_plane() {
        let mut c = Ctx::new(30).unwrap();
        assert!(ModularPoint::from_f64(&mut c, 0.0, -1.0).is_err());
    }
}
