//! Schur Q-functions and Sergeev characters in the power-sum basis; ordinary
//! Schur functions for the KP side.

use crate::algebra::pfaffian::{determinant, pfaffian, SkewMatrix};
use crate::algebra::rational::{factorial, pow2, rat_json, rint, Rational};
use crate::algebra::ring::Ring;
use crate::error::{Error, Result};
use crate::partitions::{all_partitions, delta, odd_partitions, strict_partitions, z_mu, Partition};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

/// Polynomial in power sums: p_μ ↦ coefficient.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct SymPoly {
    terms: BTreeMap<Partition, Rational>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        SymPoly::monomial(Partition::empty(), Rational::one())
    }

    pub fn monomial(mu: Partition, c: Rational) -> Self {
        let mut s = SymPoly::zero();
        s.add_term(mu, c);
        s
    }

    /// The power sum p_k.
    pub fn p(k: u32) -> Self {
        SymPoly::monomial(Partition::new(vec![k]), Rational::one())
    }

    pub fn add_term(&mut self, mu: Partition, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mu) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mu: &Partition) -> Rational {
        self.terms.get(mu).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degrees of the monomials present.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|m| m.size()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.size() == d)
    }

    /// Set p_{2k} = 0.
    pub fn restrict_odd(&self) -> SymPoly {
        SymPoly { terms: self.terms.iter().filter(|(m, _)| m.is_odd()).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Evaluate at p_k = δ_{k,1}.
    pub fn at_p1(&self) -> Rational {
        self.terms.iter().filter(|(m, _)| m.parts().iter().all(|&p| p == 1)).map(|(_, c)| c.clone()).sum()
    }

    /// Coefficients after p_k ↦ factor·k·t_k: returns t_μ ↦ coefficient.
    pub fn in_times(&self, factor: &Rational) -> BTreeMap<Partition, Rational> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut f = c.clone();
                for &k in m.parts() {
                    f *= factor * rint(k as i64);
                }
                (m.clone(), f)
            })
            .collect()
    }
}

impl SymPoly {
    pub fn from_rat(r: &Rational) -> Self {
        SymPoly::monomial(Partition::empty(), r.clone())
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = SymPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                r.add_term(a.union(b), ca * cb);
            }
        }
        r
    }
    pub fn neg(&self) -> Self {
        SymPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return SymPoly::zero();
        }
        SymPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * r)).collect() }
    }
}

impl Ring for SymPoly {
    fn rzero() -> Self {
        SymPoly::zero()
    }
    fn rone() -> Self {
        SymPoly::one()
    }
    fn from_rat(r: &Rational) -> Self {
        SymPoly::from_rat(r)
    }
    fn ris_zero(&self) -> bool {
        self.is_zero()
    }
    fn radd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn rsub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn rmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn rneg(&self) -> Self {
        self.neg()
    }
    fn rscale(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

/// [t^r] exp(2 Σ_{k odd} p_k t^k / k).
pub fn q_one_row(r: u32) -> SymPoly {
    let mut s = SymPoly::zero();
    for mu in odd_partitions(r) {
        let c = pow2(mu.len() as i64) / z_mu(&mu);
        s.add_term(mu, c);
    }
    s
}

/// Complete homogeneous h_r = [t^r] exp(Σ p_k t^k/k).
pub fn h_sym(r: i64) -> SymPoly {
    if r < 0 {
        return SymPoly::zero();
    }
    let mut s = SymPoly::zero();
    for mu in all_partitions(r as u32) {
        let c = z_mu(&mu).recip();
        s.add_term(mu, c);
    }
    s
}

/// Elementary e_r = [t^r] exp(Σ (−1)^{k−1} p_k t^k/k).
pub fn e_sym(r: i64) -> SymPoly {
    if r < 0 {
        return SymPoly::zero();
    }
    let mut s = SymPoly::zero();
    for mu in all_partitions(r as u32) {
        let sign = if (r as usize - mu.len()).is_multiple_of(2) { rint(1) } else { rint(-1) };
        let c = sign / z_mu(&mu);
        s.add_term(mu, c);
    }
    s
}

fn two_row(r: u32, s: u32) -> SymPoly {
    let mut acc = q_one_row(r).mul(&q_one_row(s));
    for i in 1..=s {
        let t = q_one_row(r + i).mul(&q_one_row(s - i)).scale(&rint(2));
        acc = if i % 2 == 1 { acc.sub(&t) } else { acc.add(&t) };
    }
    acc
}

fn q_cache() -> &'static Mutex<HashMap<Partition, Arc<SymPoly>>> {
    static C: OnceLock<Mutex<HashMap<Partition, Arc<SymPoly>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Schur Q-function Q_λ via the Pfaffian of two-row functions.
pub fn schur_q(lambda: &Partition) -> Result<Arc<SymPoly>> {
    if !lambda.is_strict() {
        return Err(Error::NotStrict(lambda.parts().to_vec()));
    }
    if let Some(q) = q_cache().lock().unwrap().get(lambda) {
        return Ok(q.clone());
    }
    let mut parts = lambda.parts().to_vec();
    if parts.len() % 2 == 1 {
        parts.push(0);
    }
    let q = if parts.len() == 2 {
        two_row(parts[0], parts[1])
    } else {
        let m = SkewMatrix::from_fn(parts.len(), |i, j| two_row(parts[i], parts[j]));
        pfaffian(&m)?
    };
    let q = Arc::new(q);
    q_cache().lock().unwrap().insert(lambda.clone(), q.clone());
    Ok(q)
}

/// Ordinary Schur function by Jacobi–Trudi (h or e form, whichever is smaller).
pub fn schur_s(lambda: &Partition) -> SymPoly {
    let l = lambda.len();
    if l == 0 {
        return SymPoly::one();
    }
    let lt = lambda.transpose();
    let (parts, gen): (Vec<u32>, fn(i64) -> SymPoly) =
        if lt.len() < l { (lt.parts().to_vec(), e_sym) } else { (lambda.parts().to_vec(), h_sym) };
    let n = parts.len();
    let m: Vec<Vec<SymPoly>> = (0..n).map(|i| (0..n).map(|j| gen(parts[i] as i64 - i as i64 + j as i64)).collect()).collect();
    determinant(&m)
}

/// Sergeev character table on DP(d) × OP(d).
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub d: u32,
    pub strict: Vec<Partition>,
    pub odd: Vec<Partition>,
    entries: HashMap<(Partition, Partition), Rational>,
}

impl CharacterTable {
    pub fn zeta(&self, lambda: &Partition, mu: &Partition) -> Rational {
        self.entries.get(&(lambda.clone(), mu.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut rows = Vec::new();
        for l in &self.strict {
            for m in &self.odd {
                rows.push(serde_json::json!({"lambda": l.parts(), "mu": m.parts(), "zeta": rat_json(&self.zeta(l, m))}));
            }
        }
        serde_json::json!({"d": self.d, "rows": rows})
    }
}

fn table_cache() -> &'static Mutex<HashMap<u32, Arc<CharacterTable>>> {
    static C: OnceLock<Mutex<HashMap<u32, Arc<CharacterTable>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn half_pow2(num: i64) -> Rational {
    debug_assert!(num % 2 == 0);
    pow2(num / 2)
}

pub fn character_table(d: u32) -> Arc<CharacterTable> {
    if let Some(t) = table_cache().lock().unwrap().get(&d) {
        return t.clone();
    }
    let strict = strict_partitions(d);
    let odd = odd_partitions(d);
    let mut entries = HashMap::new();
    for l in &strict {
        let q = schur_q(l).expect("strict");
        let norm = half_pow2(-(l.len() as i64 - delta(l) as i64));
        for m in &odd {
            entries.insert((l.clone(), m.clone()), z_mu(m) * &norm * q.coeff(m));
        }
    }
    let t = Arc::new(CharacterTable { d, strict, odd, entries });
    table_cache().lock().unwrap().insert(d, t.clone());
    t
}

/// ζ^λ_μ = z_μ 2^{−(ℓ(λ)−δ(λ))/2} [p_μ] Q_λ.
pub fn sergeev_character(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    if !lambda.is_strict() {
        return Err(Error::NotStrict(lambda.parts().to_vec()));
    }
    if !mu.is_odd() {
        return Err(Error::NotOdd(mu.parts().to_vec()));
    }
    if lambda.size() != mu.size() {
        return Err(Error::SizeMismatch { expected: lambda.size(), got: mu.size() });
    }
    Ok(character_table(lambda.size()).zeta(lambda, mu))
}

/// dim V^λ = 2^{(δ−ℓ)/2} |λ|! Q_λ(p_k = δ_{k1}).
pub fn dim_supermodule(lambda: &Partition) -> Result<Rational> {
    let q = schur_q(lambda)?;
    Ok(half_pow2(delta(lambda) as i64 - lambda.len() as i64) * factorial(lambda.size()) * q.at_p1())
}

/// f^λ_μ = 2^d d! ζ^λ_μ / (2^{ℓ(μ)} z_μ dim V^λ).
pub fn central_character(lambda: &Partition, mu: &Partition) -> Result<Rational> {
    let zeta = sergeev_character(lambda, mu)?;
    let d = lambda.size();
    let dim = dim_supermodule(lambda)?;
    Ok(pow2(d as i64) * factorial(d) * zeta / (pow2(mu.len() as i64) * z_mu(mu) * dim))
}

/// Σ_μ 2^{−ℓ(μ)−δ(σ)} ζ^ρ_μ ζ^σ_μ / z_μ for every pair; returns the first failure.
pub fn check_first_orthogonality(d: u32) -> std::result::Result<(), String> {
    let t = character_table(d);
    for r in &t.strict {
        for s in &t.strict {
            let mut acc = Rational::zero();
            for m in &t.odd {
                acc += pow2(-(m.len() as i64) - delta(s) as i64) * t.zeta(r, m) * t.zeta(s, m) / z_mu(m);
            }
            let want = if r == s { Rational::one() } else { Rational::zero() };
            if acc != want {
                return Err(format!("d={d} rho={r} sigma={s}: got {acc}"));
            }
        }
    }
    Ok(())
}

/// Σ_λ 2^{−ℓ(σ)−δ(λ)} ζ^λ_σ ζ^λ_ρ / z_σ for every pair of odd partitions.
pub fn check_second_orthogonality(d: u32) -> std::result::Result<(), String> {
    let t = character_table(d);
    for r in &t.odd {
        for s in &t.odd {
            let mut acc = Rational::zero();
            for l in &t.strict {
                acc += pow2(-(s.len() as i64) - delta(l) as i64) * t.zeta(l, s) * t.zeta(l, r) / z_mu(s);
            }
            let want = if r == s { Rational::one() } else { Rational::zero() };
            if acc != want {
                return Err(format!("d={d} rho={r} sigma={s}: got {acc}"));
            }
        }
    }
    Ok(())
}

/// p_μ rebuilt as 2^{−ℓ(μ)} Σ_λ 2^{−(ℓ(λ)+δ(λ))/2} ζ^λ_μ Q_λ.
pub fn power_sum_from_q(mu: &Partition) -> Result<SymPoly> {
    let t = character_table(mu.size());
    let mut acc = SymPoly::zero();
    for l in &t.strict {
        let c = pow2(-(mu.len() as i64)) * half_pow2(-(l.len() as i64 + delta(l) as i64)) * t.zeta(l, mu);
        acc = acc.add(&schur_q(l)?.scale(&c));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn one_row_values() {
        assert_eq!(q_one_row(0), SymPoly::one());
        assert_eq!(q_one_row(1), SymPoly::p(1).scale(&rint(2)));
        let q3 = q_one_row(3);
        assert_eq!(q3.coeff(&p(&[1, 1, 1])), rat(4, 3));
        assert_eq!(q3.coeff(&p(&[3])), rat(2, 3));
    }

    #[test]
    fn schur_q_values() {
        assert_eq!(*schur_q(&Partition::empty()).unwrap(), SymPoly::one());
        let q21 = schur_q(&p(&[2, 1])).unwrap();
        assert_eq!(q21.coeff(&p(&[1, 1, 1])), rat(4, 3));
        assert_eq!(q21.coeff(&p(&[3])), rat(-4, 3));
        assert_eq!(q21.len(), 2);
        assert!(schur_q(&p(&[2, 2])).is_err());
    }

    #[test]
    fn q321_matches_character_reconstruction() {
        let lam = p(&[3, 2, 1]);
        let q = schur_q(&lam).unwrap();
        // rebuild Q_λ from the table using (pasQ) in reverse: Q_λ = Σ_μ 2^{(ℓ−δ)/2} ζ^λ_μ p_μ / z_μ
        let t = character_table(6);
        let mut r = SymPoly::zero();
        for m in &t.odd {
            r.add_term(m.clone(), half_pow2(lam.len() as i64 - delta(&lam) as i64) * t.zeta(&lam, m) / z_mu(m));
        }
        assert_eq!(*q, r);
        assert!(q.is_homogeneous(6));
    }

    #[test]
    fn characters_and_dimensions() {
        assert_eq!(sergeev_character(&p(&[1]), &p(&[1])).unwrap(), rint(2));
        assert_eq!(sergeev_character(&p(&[2, 1]), &p(&[1, 1, 1])).unwrap(), rint(4));
        assert_eq!(sergeev_character(&p(&[2, 1]), &p(&[3])).unwrap(), rint(-2));
        assert!(sergeev_character(&p(&[2, 1]), &p(&[1])).is_err());
        assert_eq!(dim_supermodule(&Partition::empty()).unwrap(), rint(1));
        assert_eq!(dim_supermodule(&p(&[1])).unwrap(), rint(2));
        assert_eq!(dim_supermodule(&p(&[2, 1])).unwrap(), rint(4));
    }

    #[test]
    fn central_characters() {
        assert_eq!(central_character(&p(&[1]), &p(&[1])).unwrap(), rint(1));
        assert_eq!(central_character(&p(&[2]), &p(&[1, 1])).unwrap(), rint(1));
        for d in 1..=6 {
            for l in strict_partitions(d) {
                assert_eq!(central_character(&l, &Partition::ones(d)).unwrap(), rint(1));
            }
        }
    }

    #[test]
    fn orthogonality_small() {
        for d in 0..=6 {
            check_first_orthogonality(d).unwrap();
            check_second_orthogonality(d).unwrap();
        }
    }

    #[test]
    fn integrality_and_dimension_column() {
        for d in 1..=7 {
            let t = character_table(d);
            for l in &t.strict {
                assert_eq!(t.zeta(l, &Partition::ones(d)), dim_supermodule(l).unwrap());
                for m in &t.odd {
                    assert!(t.zeta(l, m).is_integer());
                }
            }
        }
    }

    #[test]
    fn inverse_expansion() {
        for d in 1..=6 {
            for mu in odd_partitions(d) {
                assert_eq!(power_sum_from_q(&mu).unwrap(), SymPoly::monomial(mu.clone(), rint(1)));
            }
        }
    }

    #[test]
    fn ordinary_schur() {
        assert_eq!(schur_s(&Partition::empty()), SymPoly::one());
        assert_eq!(schur_s(&p(&[1])), SymPoly::p(1));
        let s2 = schur_s(&p(&[2]));
        assert_eq!(s2.coeff(&p(&[1, 1])), rat(1, 2));
        assert_eq!(s2.coeff(&p(&[2])), rat(1, 2));
        // h-form and e-form agree
        let lam = p(&[3, 1, 1]);
        let n = 3;
        let parts = lam.parts();
        let m: Vec<Vec<SymPoly>> =
            (0..n).map(|i| (0..n).map(|j| h_sym(parts[i] as i64 - i as i64 + j as i64)).collect()).collect();
        assert_eq!(determinant(&m), schur_s(&lam));
    }

    #[test]
    fn schur_transpose_on_odd_times() {
        for d in 0..=6 {
            for l in all_partitions(d) {
                assert_eq!(schur_s(&l).restrict_odd(), schur_s(&l.transpose()).restrict_odd(), "{l}");
            }
        }
    }
}
