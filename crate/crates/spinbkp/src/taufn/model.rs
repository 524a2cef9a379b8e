//! Weight data (ψ̄, ȳ) of a hypergeometric tau-function.

use crate::algebra::mpoly::MPoly;
use crate::algebra::rational::{factorial, parse_rational, pow2, rat, rint, Rational};
use crate::algebra::series::{TruncSeries, EXACT};
use crate::algebra::upoly::UPoly;
use crate::error::{Error, Result};
use num_traits::Zero;

/// Coefficient of x^{2k} in S(x) = (e^{x/2} − e^{−x/2})/x.
pub fn s_coeff(k: u32) -> Rational {
    pow2(-2 * k as i64) / factorial(2 * k + 1)
}

/// The free model parameter (c for the branch presets, a for the constant weight).
#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Value(Rational),
    /// kept as a formal variable, truncated at the given degree
    Symbolic(i32),
}

#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub name: String,
    /// ψ̄ over the variables [h, y, param]
    pub psi_bar: TruncSeries,
    /// e^{2ψ̄} when it is known in closed form, same variables
    pub exp_weight: Option<TruncSeries>,
    /// ȳ over the variables [h, z]
    pub y_bar: TruncSeries,
    /// (P, R) when ψ̄ = ½S(ħ∂_y)P(y) and ȳ = R(z)
    pub curve: Option<(UPoly, UPoly)>,
}

impl ModelSpec {
    pub fn param(&self) -> &str {
        &self.psi_bar.vars()[2]
    }

    pub fn vars(&self) -> Vec<&str> {
        self.psi_bar.vars().iter().map(|s| s.as_str()).collect()
    }

    pub fn hbar_order(&self) -> i32 {
        self.psi_bar.prec("h")
    }

    /// ψ̄ = ½S(ħ∂_y)P(y), ȳ = R(z).
    pub fn from_curve(p: &UPoly, r: &UPoly, hbar_order: i32) -> Result<Self> {
        if !p.is_even() || !r.is_odd() {
            return Err(Error::Config("P must be even and R odd".into()));
        }
        let vars = ["h", "y", "c"];
        let mut psi = MPoly::zero();
        for (n, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for k in 0..=(n / 2) {
                let fall = factorial(n as u32) / factorial((n - 2 * k) as u32);
                let c = a * s_coeff(k as u32) * fall / rint(2);
                psi.add_term(crate::algebra::mono::Mono::from_exps(&[2 * k as i32, (n - 2 * k) as i32]), c);
            }
        }
        let psi_bar = TruncSeries::from_poly(&vars, &[hbar_order, EXACT, EXACT], psi);
        let y_bar = TruncSeries::from_poly(&["h", "z"], &[hbar_order, EXACT], MPoly::univariate(1, r.coeffs()));
        Ok(ModelSpec {
            name: "curve".into(),
            psi_bar,
            exp_weight: None,
            y_bar,
            curve: Some((p.clone(), r.clone())),
        })
    }

    /// ψ̄ = ½S(ħ∂_y)y^{2s}, ȳ = z.
    pub fn completed_cycles(s: u32, hbar_order: i32) -> Result<Self> {
        let p = UPoly::monomial(2 * s as usize, rint(1));
        let mut m = Self::from_curve(&p, &UPoly::x(), hbar_order)?;
        m.name = format!("spin-completed-cycles-s{s}");
        Ok(m)
    }

    /// ψ̄ ≡ a, ȳ = z.
    pub fn constant(a: Param, hbar_order: i32) -> Self {
        let vars = ["h", "y", "a"];
        let (psi, prec) = match a {
            Param::Value(v) => (MPoly::constant(v), EXACT),
            Param::Symbolic(o) => (MPoly::var(2), o),
        };
        ModelSpec {
            name: "constant".into(),
            psi_bar: TruncSeries::from_poly(&vars, &[hbar_order, EXACT, prec], psi),
            exp_weight: None,
            y_bar: TruncSeries::from_poly(&["h", "z"], &[hbar_order, EXACT], MPoly::var(1)),
            curve: None,
        }
    }

    fn c_series(c: &Param, y_order: i32) -> (TruncSeries, TruncSeries) {
        let vars = ["h", "y", "c"];
        let cprec = match c {
            Param::Value(_) => EXACT,
            Param::Symbolic(o) => *o,
        };
        let base = TruncSeries::zero_in(&vars, &[EXACT, y_order, cprec]);
        let cv = match c {
            Param::Value(v) => base.like_const(v.clone()),
            Param::Symbolic(_) => base.like_var("c"),
        };
        let y = base.like_var("y");
        (cv, y)
    }

    /// ψ̄ = ½ log(1 + c²y²/2), ȳ = z. e^{2ψ̄} is kept exactly.
    pub fn log_branch(c: Param, hbar_order: i32, y_order: i32) -> Result<Self> {
        let (cv, y) = Self::c_series(&c, y_order);
        let u = cv.mul(&cv).mul(&y).mul(&y).scale(&rat(1, 2));
        let f = u.like_const(rint(1)).add(&u);
        let psi = f.log()?.scale(&rat(1, 2)).with_prec("h", hbar_order);
        let exact = TruncSeries::from_poly(&["h", "y", "c"], &[hbar_order, EXACT, psi.prec("c")], f.poly().clone());
        Ok(ModelSpec {
            name: "log-branch-c".into(),
            psi_bar: psi,
            exp_weight: Some(exact),
            y_bar: TruncSeries::from_poly(&["h", "z"], &[hbar_order, EXACT], MPoly::var(1)),
            curve: None,
        })
    }

    /// ψ̄ = ψ = ½ log((1 + √(1 + 2c²y²))/2), ȳ = z.
    pub fn sqrt_branch(c: Param, hbar_order: i32, y_order: i32) -> Result<Self> {
        let (cv, y) = Self::c_series(&c, y_order);
        let w = cv.mul(&cv).mul(&y).mul(&y).scale(&rint(2));
        let root = w.like_const(rint(1)).add(&w).pow_rat(&rat(1, 2))?;
        let half = root.add(&root.like_const(rint(1))).scale(&rat(1, 2));
        let psi = half.log()?.scale(&rat(1, 2)).with_prec("h", hbar_order);
        Ok(ModelSpec {
            name: "sqrt-branch-c".into(),
            psi_bar: psi,
            exp_weight: None,
            y_bar: TruncSeries::from_poly(&["h", "z"], &[hbar_order, EXACT], MPoly::var(1)),
            curve: None,
        })
    }

    pub fn preset(name: &str, c: Param, hbar_order: i32, y_order: i32) -> Result<Self> {
        if let Some(s) = name.strip_prefix("spin-completed-cycles-s") {
            let s: u32 = s.parse().map_err(|_| Error::Config(format!("bad preset {name}")))?;
            if s == 0 {
                return Err(Error::Config("s must be positive".into()));
            }
            return Self::completed_cycles(s, hbar_order);
        }
        match name {
            "log-branch-c" => Self::log_branch(c, hbar_order, y_order),
            "sqrt-branch-c" => Self::sqrt_branch(c, hbar_order, y_order),
            "constant-a" => Ok(Self::constant(c, hbar_order)),
            _ => Err(Error::Config(format!("unknown preset {name}"))),
        }
    }

    /// The same model with ħ tracked to order n. ψ̄ and ȳ of every constructor
    /// are exact in ħ, so raising the order is sound.
    pub fn with_hbar_order(&self, n: i32) -> Self {
        let mut m = self.clone();
        m.psi_bar = m.psi_bar.assume_prec("h", n);
        m.y_bar = m.y_bar.assume_prec("h", n);
        if let Some(f) = &m.exp_weight {
            m.exp_weight = Some(f.assume_prec("h", n));
        }
        m
    }

    /// ψ = ψ̄ at ħ = 0.
    pub fn psi(&self) -> Result<TruncSeries> {
        self.psi_bar.coeff("h", 0)
    }

    /// y = ȳ at ħ = 0.
    pub fn y(&self) -> Result<TruncSeries> {
        self.y_bar.coeff("h", 0)
    }

    /// Plain-text key-value model description, one `key = value` per line.
    ///
    /// Keys: `preset`, `P`, `R`, `psi_bar`, `y_bar`, `c`, `hbar_order`, `y_order`.
    /// Polynomials are coefficient lists in increasing degree, e.g. `P = [0,0,1]`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv = std::collections::BTreeMap::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Config(format!("expected key = value: {line}")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let int = |k: &str, d: i32| -> Result<i32> {
            kv.get(k).map(|v| v.parse().map_err(|_| Error::Config(format!("bad {k}")))).unwrap_or(Ok(d))
        };
        let hbar_order = int("hbar_order", 8)?;
        let y_order = int("y_order", 12)?;
        let c = match kv.get("c").map(|s| s.as_str()) {
            None => Param::Value(rint(1)),
            Some(s) if s.starts_with("symbolic") => Param::Symbolic(int("c_order", 12)?),
            Some(s) => Param::Value(parse_rational(s).ok_or_else(|| Error::Config(format!("bad c {s}")))?),
        };
        if let Some(p) = kv.get("preset") {
            return Self::preset(p, c, hbar_order, y_order);
        }
        if let Some(p) = kv.get("P") {
            let p = parse_poly(p)?;
            let r = kv.get("R").map(|s| parse_poly(s)).unwrap_or_else(|| Ok(UPoly::x()))?;
            return Self::from_curve(&p, &r, hbar_order);
        }
        if let Some(p) = kv.get("psi_bar") {
            let psi = parse_poly(p)?;
            let yb = kv.get("y_bar").map(|s| parse_poly(s)).unwrap_or_else(|| Ok(UPoly::x()))?;
            if !psi.is_even() || !yb.is_odd() {
                return Err(Error::Config("psi_bar must be even and y_bar odd".into()));
            }
            let psi_bar = TruncSeries::from_poly(&["h", "y", "c"], &[hbar_order, EXACT, EXACT], MPoly::univariate(1, psi.coeffs()));
            let y_bar = TruncSeries::from_poly(&["h", "z"], &[hbar_order, EXACT], MPoly::univariate(1, yb.coeffs()));
            return Ok(ModelSpec { name: "custom".into(), psi_bar, exp_weight: None, y_bar, curve: None });
        }
        Err(Error::Config("model needs preset, P or psi_bar".into()))
    }
}

/// Parse `[a0, a1, ...]` into a polynomial.
pub fn parse_poly(s: &str) -> Result<UPoly> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    let mut c = Vec::new();
    for t in inner.split(',') {
        let t = t.trim();
        if t.is_empty() {
            continue;
        }
        c.push(parse_rational(t).ok_or_else(|| Error::Config(format!("bad coefficient {t}")))?);
    }
    Ok(UPoly::new(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completed_cycles_s1() {
        let m = ModelSpec::completed_cycles(1, 6).unwrap();
        assert_eq!(m.psi_bar.coeff_at(&[("y", 2)]).unwrap(), rat(1, 2));
        assert_eq!(m.psi_bar.coeff_at(&[("h", 2)]).unwrap(), rat(1, 24));
        assert_eq!(m.psi().unwrap().coeff_at(&[("h", 0), ("y", 2)]).unwrap(), rat(1, 2));
    }

    #[test]
    fn log_branch_series() {
        let m = ModelSpec::log_branch(Param::Symbolic(8), 6, 8).unwrap();
        // ½log(1+u) = u/2 − u²/4 + …, u = c²y²/2
        assert_eq!(m.psi_bar.coeff_at(&[("y", 2), ("c", 2)]).unwrap(), rat(1, 4));
        assert_eq!(m.psi_bar.coeff_at(&[("y", 4), ("c", 4)]).unwrap(), rat(-1, 16));
    }

    #[test]
    fn sqrt_branch_series() {
        let m = ModelSpec::sqrt_branch(Param::Value(rint(1)), 6, 6).unwrap();
        // (1+√(1+2y²))/2 = 1 + y²/2 − y⁴/4 + …; ½log → y²/4 − …
        assert_eq!(m.psi_bar.coeff_at(&[("y", 2)]).unwrap(), rat(1, 4));
        assert_eq!(m.psi_bar.coeff_at(&[("y", 4)]).unwrap(), rat(-3, 16));
    }

    #[test]
    fn parse_config() {
        let m = ModelSpec::parse("P = [0,0,1]\nR = [0,1]\nhbar_order = 4\n").unwrap();
        assert_eq!(m.hbar_order(), 4);
        assert!(m.curve.is_some());
        assert!(ModelSpec::parse("P = [0,1]").is_err());
        let m = ModelSpec::parse("preset = log-branch-c\nc = 1/2").unwrap();
        assert!(m.exp_weight.is_some());
    }
}
