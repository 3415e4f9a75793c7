//! Truncated formal power series in `x`, `y`, `t` with exact coefficients.
//!
//! Series are truncated `t`-adically: every stored term has `t`-degree at most
//! `trunc`, and `x`/`y` degrees are unbounded. Terms are kept in a `BTreeMap`
//! keyed by [`Monomial`], whose ordering is `(t, x, y)` lexicographic, so
//! iteration is canonical and slices of fixed `t`-degree are contiguous.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Bound;

use thiserror::Error;

use crate::coefficient::Coefficient;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term is not invertible")]
    NonUnitConstantTerm,
    #[error("t^0 part is not a constant; its inverse has unbounded x/y degree")]
    UnboundedInverse,
    #[error("{op} requires {requirement}")]
    BadConstantTerm {
        op: &'static str,
        requirement: &'static str,
    },
    #[error("unsupported substitution: {0}")]
    UnsupportedSubstitution(String),
    #[error("requested t^{requested} but the series is truncated at t^{trunc}")]
    TruncationExceeded { requested: u32, trunc: u32 },
    #[error("factor {k} is not congruent to 1 modulo t^{k}")]
    FactorNotNormalized { k: u32 },
}

/// Exponent triple. Field order fixes the canonical ordering `(t, x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub t: u32,
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { t: 0, x: 0, y: 0 };

    pub const fn new(x: u32, y: u32, t: u32) -> Self {
        Monomial { t, x, y }
    }

    pub const fn times(self, other: Monomial) -> Monomial {
        Monomial {
            t: self.t + other.t,
            x: self.x + other.x,
            y: self.y + other.y,
        }
    }

    fn first_of_degree(t: u32) -> Monomial {
        Monomial { t, x: 0, y: 0 }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (name, e) in [("x", self.x), ("y", self.y), ("t", self.t)] {
            match e {
                0 => {}
                1 => parts.push(name.to_string()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    T,
}

/// Image of a variable under [`TriSeries::substitute`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// One of `-1`, `0`, `1`.
    Const(i64),
    Var { var: Var, negate: bool },
}

impl Target {
    pub const fn var(var: Var) -> Self {
        Target::Var { var, negate: false }
    }

    pub const fn neg_var(var: Var) -> Self {
        Target::Var { var, negate: true }
    }
}

/// Assignment for `x` and `y`; `t` is always fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substitution {
    pub x: Target,
    pub y: Target,
}

impl Substitution {
    pub const fn new(x: Target, y: Target) -> Self {
        Substitution { x, y }
    }

    pub const fn identity() -> Self {
        Substitution::new(Target::var(Var::X), Target::var(Var::Y))
    }

    pub const fn swap_xy() -> Self {
        Substitution::new(Target::var(Var::Y), Target::var(Var::X))
    }

    /// `x -> z`, `y -> z`, with `z` stored in the `x` slot.
    pub const fn diagonal() -> Self {
        Substitution::new(Target::var(Var::X), Target::var(Var::X))
    }
}

/// Sparse polynomial in `x`, `y` keyed by `(e_x, e_y)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BiPolynomial {
    terms: BTreeMap<(u32, u32), Coefficient>,
}

impl BiPolynomial {
    pub fn zero() -> Self {
        BiPolynomial::default()
    }

    pub fn one() -> Self {
        BiPolynomial::from_terms([((0, 0), Coefficient::one())])
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), Coefficient)>,
    {
        let mut map: BTreeMap<(u32, u32), Coefficient> = BTreeMap::new();
        for (k, c) in terms {
            map.entry(k).or_default().add_assign_ref(&c);
        }
        map.retain(|_, c| !c.is_zero());
        BiPolynomial { terms: map }
    }

    pub fn from_i64_terms(terms: &[((u32, u32), i64)]) -> Self {
        BiPolynomial::from_terms(terms.iter().map(|&(k, c)| (k, Coefficient::from_i64(c))))
    }

    pub fn get(&self, ex: u32, ey: u32) -> Coefficient {
        self.terms.get(&(ex, ey)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Coefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &BiPolynomial) -> BiPolynomial {
        let mut acc: HashMap<(u32, u32), Coefficient> = HashMap::new();
        for (&(ax, ay), ca) in &self.terms {
            for (&(bx, by), cb) in &other.terms {
                acc.entry((ax + bx, ay + by))
                    .or_default()
                    .add_assign_ref(&ca.mul_ref(cb));
            }
        }
        BiPolynomial::from_terms(acc)
    }
}

impl fmt::Display for BiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let series = TriSeries::from_terms(
            self.terms
                .iter()
                .map(|(&(x, y), c)| (Monomial::new(x, y, 0), c.clone())),
            0,
        );
        write!(f, "{}", series.format_terms())
    }
}

/// Truncated series in `x`, `y`, `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriSeries {
    terms: BTreeMap<Monomial, Coefficient>,
    trunc: u32,
}

impl TriSeries {
    pub fn zero(trunc: u32) -> Self {
        TriSeries {
            terms: BTreeMap::new(),
            trunc,
        }
    }

    pub fn one(trunc: u32) -> Self {
        Self::monomial(Monomial::ONE, Coefficient::one(), trunc)
    }

    pub fn monomial(m: Monomial, c: Coefficient, trunc: u32) -> Self {
        Self::from_terms([(m, c)], trunc)
    }

    /// Sums duplicate monomials, drops zeros and anything beyond `t^trunc`.
    pub fn from_terms<I>(terms: I, trunc: u32) -> Self
    where
        I: IntoIterator<Item = (Monomial, Coefficient)>,
    {
        let mut map: BTreeMap<Monomial, Coefficient> = BTreeMap::new();
        for (m, c) in terms {
            if m.t <= trunc {
                map.entry(m).or_default().add_assign_ref(&c);
            }
        }
        map.retain(|_, c| !c.is_zero());
        TriSeries { terms: map, trunc }
    }

    pub fn from_i64_terms(terms: &[(Monomial, i64)], trunc: u32) -> Self {
        Self::from_terms(terms.iter().map(|&(m, c)| (m, Coefficient::from_i64(c))), trunc)
    }

    fn from_map(terms: BTreeMap<Monomial, Coefficient>, trunc: u32) -> Self {
        let s = TriSeries { terms, trunc };
        s.debug_check();
        s
    }

    #[inline]
    fn debug_check(&self) {
        debug_assert!(self.terms.values().all(|c| !c.is_zero()), "stored zero coefficient");
        debug_assert!(self.terms.keys().all(|m| m.t <= self.trunc), "term beyond truncation");
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: Monomial) -> Coefficient {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Re-truncate at a lower order (no-op if `trunc >= self.trunc()`).
    pub fn truncate(&self, trunc: u32) -> TriSeries {
        let trunc = trunc.min(self.trunc);
        let terms = self
            .terms
            .range(..Monomial::first_of_degree(trunc + 1))
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        TriSeries::from_map(terms, trunc)
    }

    fn slice_range(&self, t: u32) -> impl Iterator<Item = (&Monomial, &Coefficient)> {
        self.terms
            .range(Monomial::first_of_degree(t)..Monomial::first_of_degree(t + 1))
    }

    /// Polynomial multiplying `t^n`.
    pub fn coefficient_of_t(&self, n: u32) -> Result<BiPolynomial, SeriesError> {
        if n > self.trunc {
            return Err(SeriesError::TruncationExceeded {
                requested: n,
                trunc: self.trunc,
            });
        }
        Ok(BiPolynomial {
            terms: self
                .slice_range(n)
                .map(|(m, c)| ((m.x, m.y), c.clone()))
                .collect(),
        })
    }

    fn slices(&self) -> Vec<BiPolynomial> {
        (0..=self.trunc)
            .map(|n| BiPolynomial {
                terms: self
                    .slice_range(n)
                    .map(|(m, c)| ((m.x, m.y), c.clone()))
                    .collect(),
            })
            .collect()
    }

    fn from_slices(slices: Vec<BiPolynomial>, trunc: u32) -> TriSeries {
        let mut terms = BTreeMap::new();
        for (t, s) in slices.into_iter().enumerate() {
            for ((x, y), c) in s.terms {
                terms.insert(Monomial::new(x, y, t as u32), c);
            }
        }
        TriSeries::from_map(terms, trunc)
    }

    pub fn add(&self, other: &TriSeries) -> TriSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut terms = self.truncate(trunc).terms;
        for (m, c) in other.terms.range(..Monomial::first_of_degree(trunc + 1)) {
            let slot = terms.entry(*m).or_default();
            slot.add_assign_ref(c);
            if slot.is_zero() {
                terms.remove(m);
            }
        }
        TriSeries::from_map(terms, trunc)
    }

    pub fn neg(&self) -> TriSeries {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect();
        TriSeries::from_map(terms, self.trunc)
    }

    pub fn sub(&self, other: &TriSeries) -> TriSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Coefficient) -> TriSeries {
        if c.is_zero() {
            return TriSeries::zero(self.trunc);
        }
        let terms = self.terms.iter().map(|(m, v)| (*m, v.mul_ref(c))).collect();
        TriSeries::from_map(terms, self.trunc)
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &TriSeries) -> TriSeries {
        let trunc = self.trunc.min(other.trunc);
        let mut acc: HashMap<Monomial, Coefficient> = HashMap::new();
        for (ma, ca) in self.terms.range(..Monomial::first_of_degree(trunc + 1)) {
            let room = trunc - ma.t;
            for (mb, cb) in other.terms.range(..Monomial::first_of_degree(room + 1)) {
                acc.entry(ma.times(*mb))
                    .or_default()
                    .add_assign_ref(&ca.mul_ref(cb));
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        TriSeries::from_map(terms, trunc)
    }

    fn unit_constant(&self) -> Result<Coefficient, SeriesError> {
        let mut slice0 = self.slice_range(0);
        match slice0.next() {
            None => Err(SeriesError::NonUnitConstantTerm),
            Some((m, c)) => {
                if *m != Monomial::ONE {
                    return Err(if self.terms.contains_key(&Monomial::ONE) {
                        SeriesError::UnboundedInverse
                    } else {
                        SeriesError::NonUnitConstantTerm
                    });
                }
                if slice0.next().is_some() {
                    return Err(SeriesError::UnboundedInverse);
                }
                Ok(c.clone())
            }
        }
    }

    /// Multiplicative inverse up to `t^trunc`. The `t^0` part must be a
    /// nonzero constant.
    pub fn invert(&self) -> Result<TriSeries, SeriesError> {
        let c0 = self.unit_constant()?;
        let inv0 = c0.recip().ok_or(SeriesError::NonUnitConstantTerm)?;
        let neg_inv0 = inv0.neg_ref();
        let a = self.slices();
        let n = self.trunc as usize;
        let mut b: Vec<BiPolynomial> = Vec::with_capacity(n + 1);
        b.push(BiPolynomial::from_terms([((0, 0), inv0)]));
        for d in 1..=n {
            let mut acc: HashMap<(u32, u32), Coefficient> = HashMap::new();
            for j in 1..=d {
                if a[j].is_empty() || b[d - j].is_empty() {
                    continue;
                }
                for (k, c) in a[j].mul(&b[d - j]).terms {
                    acc.entry(k).or_default().add_assign_ref(&c);
                }
            }
            b.push(BiPolynomial::from_terms(
                acc.into_iter().map(|(k, c)| (k, c.mul_ref(&neg_inv0))),
            ));
        }
        Ok(TriSeries::from_slices(b, self.trunc))
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<TriSeries, SeriesError> {
        if e == 0 {
            return Ok(TriSeries::one(self.trunc));
        }
        let mut base = if e < 0 { self.invert()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut result = TriSeries::one(self.trunc);
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// `exp(self)`; the `t^0` part must vanish.
    pub fn exp(&self) -> Result<TriSeries, SeriesError> {
        if self.slice_range(0).next().is_some() {
            return Err(SeriesError::BadConstantTerm {
                op: "exp",
                requirement: "a vanishing t^0 part",
            });
        }
        // n E_n = sum_{j=1}^{n} j a_j E_{n-j}
        let a = self.slices();
        let n = self.trunc as usize;
        let mut e: Vec<BiPolynomial> = vec![BiPolynomial::one()];
        for d in 1..=n {
            let mut acc: HashMap<(u32, u32), Coefficient> = HashMap::new();
            for j in 1..=d {
                if a[j].is_empty() || e[d - j].is_empty() {
                    continue;
                }
                let weight = Coefficient::from_i64(j as i64);
                for (k, c) in a[j].mul(&e[d - j]).terms {
                    acc.entry(k).or_default().add_assign_ref(&c.mul_ref(&weight));
                }
            }
            let inv_d = Coefficient::ratio(1, d as i64);
            e.push(BiPolynomial::from_terms(
                acc.into_iter().map(|(k, c)| (k, c.mul_ref(&inv_d))),
            ));
        }
        Ok(TriSeries::from_slices(e, self.trunc))
    }

    /// `log(self)`; the `t^0` part must be exactly 1.
    pub fn log(&self) -> Result<TriSeries, SeriesError> {
        let bad = SeriesError::BadConstantTerm {
            op: "log",
            requirement: "t^0 part equal to 1",
        };
        match self.unit_constant() {
            Ok(c) if c.is_one() => {}
            _ => return Err(bad),
        }
        // n L_n = n a_n - sum_{j=1}^{n-1} j L_j a_{n-j}
        let a = self.slices();
        let n = self.trunc as usize;
        let mut l: Vec<BiPolynomial> = vec![BiPolynomial::zero()];
        for d in 1..=n {
            let mut acc: HashMap<(u32, u32), Coefficient> = HashMap::new();
            let nd = Coefficient::from_i64(d as i64);
            for (k, c) in a[d].terms() {
                acc.entry(*k).or_default().add_assign_ref(&c.mul_ref(&nd));
            }
            for j in 1..d {
                if l[j].is_empty() || a[d - j].is_empty() {
                    continue;
                }
                let weight = Coefficient::from_i64(-(j as i64));
                for (k, c) in l[j].mul(&a[d - j]).terms {
                    acc.entry(k).or_default().add_assign_ref(&c.mul_ref(&weight));
                }
            }
            let inv_d = Coefficient::ratio(1, d as i64);
            l.push(BiPolynomial::from_terms(
                acc.into_iter().map(|(k, c)| (k, c.mul_ref(&inv_d))),
            ));
        }
        Ok(TriSeries::from_slices(l, self.trunc))
    }

    /// Multiply by `(1 - sign * m)^exponent` without materialising the factor.
    ///
    /// `sign` must be `1` or `-1` and `m` must have positive `t`-degree.
    pub fn mul_binomial_power(&self, m: Monomial, sign: i64, exponent: i64) -> TriSeries {
        assert!(m.t >= 1, "binomial factor must have positive t-degree");
        assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        let s = Coefficient::from_i64(sign);
        let mut cur = self.clone();
        if exponent > 0 {
            for _ in 0..exponent {
                // a - s*m*a
                let limit = (cur.trunc + 1).saturating_sub(m.t);
                let shifted = cur
                    .terms
                    .range(..Monomial::first_of_degree(limit))
                    .map(|(k, c)| (k.times(m), c.mul_ref(&s).neg_ref()));
                cur = TriSeries::from_terms(cur.terms.clone().into_iter().chain(shifted), cur.trunc);
            }
        } else {
            for _ in 0..exponent.unsigned_abs() {
                // b = a + s*m*b, resolved in increasing monomial order
                let mut b = cur.terms;
                let mut cursor: Option<Monomial> = None;
                loop {
                    let next = match cursor {
                        None => b.iter().next(),
                        Some(c) => b.range((Bound::Excluded(c), Bound::Unbounded)).next(),
                    };
                    let Some((&k, v)) = next else { break };
                    cursor = Some(k);
                    let target = k.times(m);
                    if target.t > cur.trunc {
                        continue;
                    }
                    let add = v.mul_ref(&s);
                    let slot = b.entry(target).or_default();
                    slot.add_assign_ref(&add);
                    if slot.is_zero() {
                        b.remove(&target);
                    }
                }
                cur = TriSeries::from_map(b, cur.trunc);
            }
        }
        cur
    }

    /// Multiply by `prod_i (1 - sign_i * m_i)^{exponent_i}`.
    ///
    /// Same result as chaining [`TriSeries::mul_binomial_power`], but the
    /// work happens in one dense buffer sized by the largest slope
    /// `e_x / e_t`, `e_y / e_t` among the factors. Falls back to the sparse
    /// path when that buffer would be unreasonably large.
    pub fn mul_binomial_powers(&self, factors: &[(Monomial, i64, i64)]) -> TriSeries {
        const MAX_CELLS: u64 = 1 << 24;
        for &(m, sign, _) in factors {
            assert!(m.t >= 1, "binomial factor must have positive t-degree");
            assert!(sign == 1 || sign == -1, "sign must be +1 or -1");
        }
        let factors: Vec<_> = factors.iter().copied().filter(|f| f.2 != 0).collect();
        if factors.is_empty() || self.terms.is_empty() {
            return self.clone();
        }
        let base_x = self.terms.keys().map(|m| m.x).max().unwrap_or(0) as u64;
        let base_y = self.terms.keys().map(|m| m.y).max().unwrap_or(0) as u64;
        // slope bounds as exact fractions num/den, compared by cross-multiplication
        let slope = |f: fn(&Monomial) -> u32| {
            factors
                .iter()
                .map(|(m, _, _)| (f(m) as u64, m.t as u64))
                .fold((0u64, 1u64), |a, b| if b.0 * a.1 > a.0 * b.1 { b } else { a })
        };
        let (sx, sy) = (slope(|m| m.x), slope(|m| m.y));
        let trunc = self.trunc as u64;
        let bound_x: Vec<u64> = (0..=trunc).map(|t| base_x + sx.0 * t / sx.1).collect();
        let bound_y: Vec<u64> = (0..=trunc).map(|t| base_y + sy.0 * t / sy.1).collect();
        let mut offsets = Vec::with_capacity(trunc as usize + 2);
        let mut cells = 0u64;
        for t in 0..=trunc as usize {
            offsets.push(cells);
            cells += (bound_x[t] + 1) * (bound_y[t] + 1);
            if cells > MAX_CELLS {
                return factors
                    .iter()
                    .fold(self.clone(), |acc, &(m, s, e)| acc.mul_binomial_power(m, s, e));
            }
        }
        let index = |t: u32, x: u32, y: u32| -> Option<usize> {
            let (t, x, y) = (t as usize, x as u64, y as u64);
            (x <= bound_x[t] && y <= bound_y[t])
                .then(|| (offsets[t] + x * (bound_y[t] + 1) + y) as usize)
        };
        let mut buf = vec![Coefficient::zero(); cells as usize];
        for (m, c) in &self.terms {
            buf[index(m.t, m.x, m.y).expect("base term inside its own bound")] = c.clone();
        }
        for (m, sign, exponent) in factors {
            for _ in 0..exponent.unsigned_abs() {
                let ts: Vec<u32> = if exponent < 0 {
                    (m.t..=self.trunc).collect()
                } else {
                    (m.t..=self.trunc).rev().collect()
                };
                for t in ts {
                    let src_t = t - m.t;
                    for x in m.x..=bound_x[t as usize] as u32 {
                        for y in m.y..=bound_y[t as usize] as u32 {
                            let Some(src) = index(src_t, x - m.x, y - m.y) else { continue };
                            if buf[src].is_zero() {
                                continue;
                            }
                            let delta = if (exponent < 0) == (sign > 0) {
                                buf[src].clone()
                            } else {
                                buf[src].neg_ref()
                            };
                            let dst = index(t, x, y).expect("inside bound");
                            buf[dst].add_assign_ref(&delta);
                        }
                    }
                }
            }
        }
        let mut out = BTreeMap::new();
        for t in 0..=self.trunc {
            for x in 0..=bound_x[t as usize] as u32 {
                for y in 0..=bound_y[t as usize] as u32 {
                    let i = index(t, x, y).expect("inside bound");
                    if !buf[i].is_zero() {
                        out.insert(Monomial { t, x, y }, std::mem::take(&mut buf[i]));
                    }
                }
            }
        }
        TriSeries::from_map(out, self.trunc)
    }

    pub fn substitute(&self, sub: &Substitution) -> Result<TriSeries, SeriesError> {
        for (name, target) in [("x", sub.x), ("y", sub.y)] {
            match target {
                Target::Const(c) if !(-1..=1).contains(&c) => {
                    return Err(SeriesError::UnsupportedSubstitution(format!(
                        "{name} -> {c}: constants must be -1, 0 or 1"
                    )))
                }
                Target::Var { var: Var::T, .. } => {
                    return Err(SeriesError::UnsupportedSubstitution(format!(
                        "{name} -> t would break t-adic truncation"
                    )))
                }
                _ => {}
            }
        }
        let apply = |target: Target, e: u32, m: &mut Monomial, sign: &mut i64| -> bool {
            match target {
                Target::Const(0) => e == 0,
                Target::Const(c) => {
                    if c < 0 && e % 2 == 1 {
                        *sign = -*sign;
                    }
                    true
                }
                Target::Var { var, negate } => {
                    if negate && e % 2 == 1 {
                        *sign = -*sign;
                    }
                    match var {
                        Var::X => m.x += e,
                        Var::Y => m.y += e,
                        Var::T => unreachable!(),
                    }
                    true
                }
            }
        };
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut image = Monomial::new(0, 0, m.t);
            let mut sign = 1i64;
            if !apply(sub.x, m.x, &mut image, &mut sign) || !apply(sub.y, m.y, &mut image, &mut sign) {
                continue;
            }
            let c = if sign < 0 { c.neg_ref() } else { c.clone() };
            out.push((image, c));
        }
        Ok(TriSeries::from_terms(out, self.trunc))
    }

    /// First term violating `e_x, e_y <= 2 e_t + slack`, if any.
    pub fn degree_bound_violation(&self, slack: u32) -> Option<Monomial> {
        self.terms
            .keys()
            .find(|m| m.x > 2 * m.t + slack || m.y > 2 * m.t + slack)
            .copied()
    }

    /// Drop terms with `e_x` or `e_y` above `2 e_t + slack`.
    pub fn prune_degrees(&self, slack: u32) -> TriSeries {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.x <= 2 * m.t + slack && m.y <= 2 * m.t + slack)
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        TriSeries::from_map(terms, self.trunc)
    }

    pub fn all_integral(&self) -> bool {
        self.terms.values().all(Coefficient::is_integral)
    }

    pub(crate) fn format_terms(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { c.neg_ref() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if *m == Monomial::ONE {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.to_string());
            } else {
                out.push_str(&format!("{abs}*{m}"));
            }
        }
        out
    }
}

impl fmt::Display for TriSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self.format_terms(), self.trunc + 1)
    }
}

/// `prod_{k=1}^{trunc} factor(k)` truncated at `t^trunc`; each factor must be
/// congruent to 1 modulo `t^k`.
pub fn euler_product<F>(trunc: u32, mut factor: F) -> Result<TriSeries, SeriesError>
where
    F: FnMut(u32) -> TriSeries,
{
    let mut acc = TriSeries::one(trunc);
    for k in 1..=trunc {
        let f = factor(k).truncate(trunc);
        let normalized = f
            .terms
            .range(..Monomial::first_of_degree(k))
            .all(|(m, c)| *m == Monomial::ONE && c.is_one())
            && f.terms.contains_key(&Monomial::ONE);
        if !normalized {
            return Err(SeriesError::FactorNotNormalized { k });
        }
        acc = acc.mul(&f);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(x: u32, y: u32, t: u32) -> Monomial {
        Monomial::new(x, y, t)
    }

    fn s(terms: &[((u32, u32, u32), i64)], trunc: u32) -> TriSeries {
        TriSeries::from_i64_terms(
            &terms.iter().map(|&((x, y, t), c)| (m(x, y, t), c)).collect::<Vec<_>>(),
            trunc,
        )
    }

    #[test]
    fn add_examples() {
        let a = s(&[((0, 0, 0), 1), ((0, 0, 1), 1)], 5);
        let b = s(&[((0, 0, 0), 1), ((0, 0, 1), -1)], 5);
        assert_eq!(a.add(&b), s(&[((0, 0, 0), 2)], 5));
        assert_eq!(a.add(&TriSeries::zero(5)), a);
        let xt = s(&[((1, 0, 1), 1)], 3);
        let yt = s(&[((0, 1, 1), 1)], 3);
        assert_eq!(xt.add(&yt), s(&[((1, 0, 1), 1), ((0, 1, 1), 1)], 3));
    }

    #[test]
    fn add_truncates_to_min() {
        let a = s(&[((0, 0, 3), 1)], 5);
        let b = s(&[((0, 0, 1), 1)], 2);
        let sum = a.add(&b);
        assert_eq!(sum.trunc(), 2);
        assert_eq!(sum, s(&[((0, 0, 1), 1)], 2));
    }

    #[test]
    fn mul_examples() {
        let a = s(&[((0, 0, 0), 1), ((0, 0, 1), 1)], 4);
        let b = s(&[((0, 0, 0), 1), ((0, 0, 1), -1)], 4);
        assert_eq!(a.mul(&b), s(&[((0, 0, 0), 1), ((0, 0, 2), -1)], 4));
        assert_eq!(a.mul(&TriSeries::one(4)), a);
        let p = s(&[((0, 0, 0), 1), ((1, 0, 1), 1)], 4);
        let q = s(&[((0, 0, 0), 1), ((0, 1, 1), 1)], 4);
        assert_eq!(
            p.mul(&q),
            s(&[((0, 0, 0), 1), ((1, 0, 1), 1), ((0, 1, 1), 1), ((1, 1, 2), 1)], 4)
        );
    }

    #[test]
    fn invert_examples() {
        let one_minus_t = s(&[((0, 0, 0), 1), ((0, 0, 1), -1)], 6);
        let geo: Vec<_> = (0..=6).map(|k| ((0, 0, k), 1)).collect();
        assert_eq!(one_minus_t.invert().unwrap(), s(&geo, 6));
        assert_eq!(TriSeries::one(3).invert().unwrap(), TriSeries::one(3));
        let one_minus_xyt = s(&[((0, 0, 0), 1), ((1, 1, 1), -1)], 5);
        let expected: Vec<_> = (0..=5).map(|k| ((k, k, k), 1)).collect();
        assert_eq!(one_minus_xyt.invert().unwrap(), s(&expected, 5));
    }

    #[test]
    fn invert_errors() {
        assert_eq!(
            s(&[((0, 0, 1), 1)], 3).invert(),
            Err(SeriesError::NonUnitConstantTerm)
        );
        assert_eq!(
            s(&[((0, 0, 0), 1), ((1, 0, 0), 1)], 3).invert(),
            Err(SeriesError::UnboundedInverse)
        );
        assert_eq!(TriSeries::zero(2).invert(), Err(SeriesError::NonUnitConstantTerm));
    }

    #[test]
    fn pow_examples() {
        let a = s(&[((0, 0, 0), 1), ((0, 0, 1), 1)], 4);
        assert_eq!(a.pow(2).unwrap(), s(&[((0, 0, 0), 1), ((0, 0, 1), 2), ((0, 0, 2), 1)], 4));
        assert_eq!(a.pow(0).unwrap(), TriSeries::one(4));
        let b = s(&[((0, 0, 0), 1), ((0, 0, 1), -1)], 6);
        let expected: Vec<_> = (0..=6).map(|k| ((0, 0, k), k as i64 + 1)).collect();
        assert_eq!(b.pow(-2).unwrap(), s(&expected, 6));
        assert_eq!(b.pow(-2).unwrap(), b.pow(2).unwrap().invert().unwrap());
    }

    #[test]
    fn exp_log_examples() {
        let t = s(&[((0, 0, 1), 1)], 3);
        let expected = TriSeries::from_terms(
            [
                (m(0, 0, 0), Coefficient::one()),
                (m(0, 0, 1), Coefficient::one()),
                (m(0, 0, 2), Coefficient::ratio(1, 2)),
                (m(0, 0, 3), Coefficient::ratio(1, 6)),
            ],
            3,
        );
        assert_eq!(t.exp().unwrap(), expected);
        assert_eq!(TriSeries::one(4).log().unwrap(), TriSeries::zero(4));
        let neg_log = TriSeries::from_terms(
            (1..=7).map(|k| (m(0, 0, k), Coefficient::ratio(1, k as i64))),
            7,
        );
        let geo = s(&[((0, 0, 0), 1), ((0, 0, 1), -1)], 7).invert().unwrap();
        assert_eq!(neg_log.exp().unwrap(), geo);
        assert!(matches!(TriSeries::one(2).exp(), Err(SeriesError::BadConstantTerm { .. })));
        assert!(matches!(t.log(), Err(SeriesError::BadConstantTerm { .. })));
    }

    #[test]
    fn substitute_examples() {
        let a = s(&[((0, 0, 0), 1), ((1, 0, 1), 1)], 3);
        let x_to_1 = Substitution::new(Target::Const(1), Target::var(Var::Y));
        assert_eq!(a.substitute(&x_to_1).unwrap(), s(&[((0, 0, 0), 1), ((0, 0, 1), 1)], 3));
        let b = s(&[((0, 0, 0), 1), ((2, 1, 1), 1)], 3);
        assert_eq!(
            b.substitute(&Substitution::swap_xy()).unwrap(),
            s(&[((0, 0, 0), 1), ((1, 2, 1), 1)], 3)
        );
        let c = s(&[((0, 0, 0), 1), ((0, 1, 1), 1)], 3);
        let y_to_minus = Substitution::new(Target::var(Var::X), Target::Const(-1));
        assert_eq!(c.substitute(&y_to_minus).unwrap(), s(&[((0, 0, 0), 1), ((0, 0, 1), -1)], 3));
        let diag = s(&[((1, 2, 1), 3)], 3).substitute(&Substitution::diagonal()).unwrap();
        assert_eq!(diag, s(&[((3, 0, 1), 3)], 3));
    }

    #[test]
    fn substitute_rejects_unsupported() {
        let a = TriSeries::one(1);
        assert!(a
            .substitute(&Substitution::new(Target::Const(2), Target::var(Var::Y)))
            .is_err());
        assert!(a
            .substitute(&Substitution::new(Target::var(Var::T), Target::var(Var::Y)))
            .is_err());
    }

    #[test]
    fn coefficient_of_t_examples() {
        let inv = s(&[((0, 0, 0), 1), ((1, 1, 1), -1)], 4).invert().unwrap();
        assert_eq!(inv.coefficient_of_t(3).unwrap(), BiPolynomial::from_i64_terms(&[((3, 3), 1)]));
        assert_eq!(
            inv.coefficient_of_t(5),
            Err(SeriesError::TruncationExceeded { requested: 5, trunc: 4 })
        );
    }

    #[test]
    fn euler_product_examples() {
        // (1 - t^k)^{-1}: partition numbers; p(5) = 7 by enumeration in the combinatorics tests.
        let p = euler_product(5, |k| s(&[((0, 0, 0), 1), ((0, 0, k), -1)], 5).invert().unwrap())
            .unwrap();
        assert_eq!(p.coefficient(m(0, 0, 5)), Coefficient::from_i64(7));
        assert_eq!(euler_product(4, |_| TriSeries::one(4)).unwrap(), TriSeries::one(4));
        let q = euler_product(1, |k| s(&[((0, 0, 0), 1), ((0, 0, k), -1)], 1)).unwrap();
        assert_eq!(q, s(&[((0, 0, 0), 1), ((0, 0, 1), -1)], 1));
        let bad = euler_product(3, |_| s(&[((0, 0, 0), 1), ((0, 0, 1), 1)], 3));
        assert_eq!(bad, Err(SeriesError::FactorNotNormalized { k: 2 }));
    }

    #[test]
    fn binomial_power_matches_pow() {
        let base = s(&[((0, 0, 0), 1), ((1, 0, 1), 2), ((0, 1, 2), -1)], 6);
        let mono = m(1, 2, 2);
        for sign in [1i64, -1] {
            let factor = s(&[((0, 0, 0), 1), ((1, 2, 2), -sign)], 6);
            for e in -3..=3 {
                let direct = base.mul(&factor.pow(e).unwrap());
                assert_eq!(base.mul_binomial_power(mono, sign, e), direct, "sign {sign} e {e}");
                assert_eq!(base.mul_binomial_powers(&[(mono, sign, e)]), direct, "batched sign {sign} e {e}");
            }
        }
    }

    #[test]
    fn batched_binomials_match_chained() {
        let base = s(&[((0, 0, 0), 1), ((3, 0, 1), 2), ((0, 1, 2), -1), ((1, 1, 0), 5)], 5);
        let factors = [
            (m(1, 2, 2), 1, -2),
            (m(0, 0, 1), -1, 3),
            (m(2, 1, 1), 1, -1),
            (m(0, 3, 3), -1, -2),
            (m(1, 1, 1), 1, 0),
        ];
        let chained = factors
            .iter()
            .fold(base.clone(), |acc, &(mo, sg, e)| acc.mul_binomial_power(mo, sg, e));
        assert_eq!(base.mul_binomial_powers(&factors), chained);
        assert_eq!(TriSeries::zero(3).mul_binomial_powers(&factors), TriSeries::zero(3));
        assert_eq!(base.mul_binomial_powers(&[]), base);
    }

    #[test]
    fn display_is_canonical() {
        let a = s(&[((0, 0, 0), 1), ((1, 0, 1), -2), ((0, 1, 1), 1)], 2);
        assert_eq!(a.to_string(), "1 + y*t - 2*x*t + O(t^3)");
    }
}
