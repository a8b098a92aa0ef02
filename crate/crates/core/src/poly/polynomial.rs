use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::monomial::grevlex_cmp;
use super::{GaussianRational, Monomial, PolyError, VarKind, VarTable};
use crate::ideal::MonomialOrder;

/// Sparse multivariate polynomial over `Q(i)`.
///
/// Terms are kept sorted in descending graded reverse lexicographic order
/// with no zero coefficients, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct Poly {
    table: Arc<VarTable>,
    terms: Vec<(Monomial, GaussianRational)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.table.same_as(&other.table) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        Self {
            table: table.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        Self::constant(table, GaussianRational::one())
    }

    pub fn constant(table: &Arc<VarTable>, c: GaussianRational) -> Self {
        Self::monomial(table, Monomial::one(table.len()), c)
    }

    pub fn monomial(table: &Arc<VarTable>, m: Monomial, c: GaussianRational) -> Self {
        debug_assert_eq!(m.len(), table.len());
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Self {
            table: table.clone(),
            terms,
        }
    }

    pub fn var(table: &Arc<VarTable>, i: usize) -> Self {
        Self::monomial(table, Monomial::var(table.len(), i, 1), GaussianRational::one())
    }

    pub fn var_named(table: &Arc<VarTable>, name: &str) -> Result<Self, PolyError> {
        let i = table
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(table, i))
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(table: &Arc<VarTable>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut acc: HashMap<Monomial, GaussianRational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), table.len());
            *acc.entry(m).or_insert_with(GaussianRational::zero) += &c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grevlex_cmp(&b.0 .0, &a.0 .0, None));
        Self {
            table: table.clone(),
            terms,
        }
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> &[(Monomial, GaussianRational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, GaussianRational)> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.as_slice() {
            [] => Some(GaussianRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    /// Total degree counting only the variables in `vars`.
    pub fn degree_in_block(&self, vars: &[usize]) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| vars.iter().map(|&v| m.0[v]).sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    /// Indices of variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        (0..self.table.len()).filter(|&i| self.uses_var(i)).collect()
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<&(Monomial, GaussianRational)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        Self {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divides by the grevlex-leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.table);
        }
        // multiplying by a monomial preserves any monomial order
        Self {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.table);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Swaps every holomorphic exponent with its conjugate partner's and
    /// conjugates every coefficient.
    pub fn conjugate(&self) -> Result<Self, PolyError> {
        let t = &self.table;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; t.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match t.partner(i) {
                    Some(j) => e[j] = x,
                    None => return Err(PolyError::NoConjugate(t.name(i).to_string())),
                }
            }
            terms.push((Monomial(e), c.conj()));
        }
        Ok(Self::from_terms(t, terms))
    }

    /// `conjugate(p) == p`.
    pub fn is_real(&self) -> bool {
        self.conjugate().is_ok_and(|c| c == *self)
    }

    /// Ring homomorphism into `target` sending variable `i` to `images[i]`.
    pub fn map_into(&self, target: &Arc<VarTable>, images: &[Poly]) -> Result<Self, PolyError> {
        if images.len() != self.table.len() {
            return Err(PolyError::TableMismatch);
        }
        if images.iter().any(|p| !p.table.same_as(target)) {
            return Err(PolyError::TableMismatch);
        }
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache
                    .entry((i, e))
                    .or_insert_with(|| images[i].pow(e))
                    .clone();
                term = &term * &p;
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Simultaneous substitution of variables by polynomials over the same
    /// table.
    pub fn substitute(&self, bindings: &HashMap<usize, Poly>) -> Result<Self, PolyError> {
        let images: Vec<Poly> = (0..self.table.len())
            .map(|i| match bindings.get(&i) {
                Some(p) => p.clone(),
                None => Self::var(&self.table, i),
            })
            .collect();
        self.map_into(&self.table, &images)
    }

    pub fn substitute_named(&self, bindings: &[(&str, Poly)]) -> Result<Self, PolyError> {
        let mut map = HashMap::new();
        for (name, p) in bindings {
            let i = self
                .table
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            map.insert(i, p.clone());
        }
        self.substitute(&map)
    }

    /// Replaces the listed variables by constants (other variables stay).
    pub fn specialize(&self, values: &HashMap<usize, GaussianRational>) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let mut c = c.clone();
            for (&i, v) in values {
                if e[i] > 0 {
                    c *= &v.pow(e[i]);
                    e[i] = 0;
                }
            }
            terms.push((Monomial(e), c));
        }
        Self::from_terms(&self.table, terms)
    }

    /// Re-expresses the polynomial over `target`, matching variables by
    /// name after applying `rename`.
    pub fn rename_into<F>(&self, target: &Arc<VarTable>, rename: F) -> Result<Self, PolyError>
    where
        F: Fn(&str) -> String,
    {
        let mut idx = Vec::with_capacity(self.table.len());
        for i in 0..self.table.len() {
            let name = rename(self.table.name(i));
            idx.push(target.index_of(&name));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match idx[i] {
                    Some(j) => e[j] += x,
                    None => return Err(PolyError::UnknownVariable(rename(self.table.name(i)))),
                }
            }
            terms.push((Monomial(e), c.clone()));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Same-name embedding into another table.
    pub fn embed(&self, target: &Arc<VarTable>) -> Result<Self, PolyError> {
        if self.table.same_as(target) {
            return Ok(Self {
                table: target.clone(),
                terms: self.terms.clone(),
            });
        }
        self.rename_into(target, str::to_string)
    }

    /// Exact evaluation; every variable that occurs must be bound.
    pub fn eval(&self, point: &HashMap<usize, GaussianRational>) -> Result<GaussianRational, PolyError> {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = point
                    .get(&i)
                    .ok_or_else(|| PolyError::Unbound(self.table.name(i).to_string()))?;
                t *= &v.pow(e);
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Evaluation with values given by a dense slice over the whole table.
    pub fn eval_dense(&self, values: &[GaussianRational]) -> GaussianRational {
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= &values[i].pow(e);
                }
            }
            acc += &t;
        }
        acc
    }

    pub fn eval_named(&self, point: &[(&str, GaussianRational)]) -> Result<GaussianRational, PolyError> {
        let mut map = HashMap::new();
        for (name, v) in point {
            let i = self
                .table
                .index_of(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            map.insert(i, v.clone());
        }
        self.eval(&map)
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.0[i] > 0).map(|(m, c)| {
            let mut e = m.0.clone();
            let k = e[i];
            e[i] -= 1;
            (Monomial(e), c * &GaussianRational::from_integer(k as i64))
        });
        Self::from_terms(&self.table, terms)
    }

    /// Groups terms by their exponents on `block`; each group's coefficient
    /// is a polynomial in the remaining variables.
    pub fn coefficients_in(&self, block: &[usize]) -> Vec<(Monomial, Poly)> {
        let mut groups: HashMap<Monomial, Vec<(Monomial, GaussianRational)>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut key = vec![0; self.table.len()];
            let mut rest = m.0.clone();
            for &b in block {
                key[b] = m.0[b];
                rest[b] = 0;
            }
            groups
                .entry(Monomial(key))
                .or_default()
                .push((Monomial(rest), c.clone()));
        }
        let mut out: Vec<_> = groups
            .into_iter()
            .map(|(k, ts)| (k, Self::from_terms(&self.table, ts)))
            .collect();
        out.sort_by(|a, b| grevlex_cmp(&b.0 .0, &a.0 .0, None));
        out
    }

    /// True if every variable that occurs is of the given kinds.
    pub fn only_kinds(&self, kinds: &[VarKind]) -> bool {
        self.variables()
            .iter()
            .all(|&i| kinds.contains(&self.table.kind(i)))
    }

    /// Exact division by `d`, when `d` divides `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        // grevlex leading terms; storage order is grevlex so first() is leading
        let (dm, dc) = d.terms.first()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.table);
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = dm.div_into(&m)?;
            let qc = &c / dc;
            rem = &rem - &d.mul_term(&q, &qc);
            quot = &quot + &Self::monomial(&self.table, q, qc);
        }
        Some(quot)
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        assert!(
            self.table.same_as(&other.table),
            "polynomials over different variable tables"
        );
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match grevlex_cmp(&a[i].0 .0, &b[j].0 .0, None) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), if negate { -c } else { c.clone() })));
        Self {
            table: self.table.clone(),
            terms: out,
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert!(
            self.table.same_as(&rhs.table),
            "polynomials over different variable tables"
        );
        let mut acc: HashMap<Monomial, GaussianRational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(GaussianRational::zero) += &(ca * cb);
            }
        }
        Poly::from_terms(&self.table, acc)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, table: &VarTable, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        write!(f, "{}", table.name(i))?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mixed = !c.is_real() && !c.is_imaginary();
            // sign of the printed part: real part for reals, imaginary part
            // for pure imaginaries; mixed coefficients are parenthesised
            let negative = if c.is_real() {
                c.re < num_rational::BigRational::zero()
            } else if c.is_imaginary() {
                c.im < num_rational::BigRational::zero()
            } else {
                false
            };
            let body = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                if mixed {
                    write!(f, "({body})")?;
                } else {
                    write!(f, "{body}")?;
                }
                continue;
            }
            if mixed {
                write!(f, "({body})*")?;
            } else if !body.is_one() {
                write!(f, "{body}*")?;
            }
            write_monomial(f, &self.table, m)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn table() -> Arc<VarTable> {
        VarTable::with_conjugates(&["z1", "z2"]).unwrap()
    }

    fn p(s: &str) -> Poly {
        parse_poly(s, &table()).unwrap()
    }

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts((re, 1), (im, 1))
    }

    #[test]
    fn conjugation() {
        assert_eq!(p("z1*~z2").conjugate().unwrap(), p("~z1*z2"));
        assert_eq!(p("i*z1").conjugate().unwrap(), p("-i*~z1"));
        let sphere = p("z1*~z1 + z2*~z2 - 1");
        assert_eq!(sphere.conjugate().unwrap(), sphere);
        assert!(sphere.is_real());
        assert!(!p("z1").is_real());
        let t = VarTable::builder().holo("z").param("t").build().unwrap();
        let q = parse_poly("z*t", &t).unwrap();
        assert!(matches!(q.conjugate(), Err(PolyError::NoConjugate(_))));
    }

    #[test]
    fn substitution() {
        let two = Poly::constant(&table(), g(2, 0));
        assert_eq!(p("z1*~z1").substitute_named(&[("~z1", two)]).unwrap(), p("2*z1"));
        assert_eq!(p("z1^2 + z2").substitute_named(&[("z1", p("z2"))]).unwrap(), p("z2^2 + z2"));
        let sphere = p("z1*~z1 + z2*~z2 - 1");
        let at = sphere
            .substitute_named(&[("~z1", p("1")), ("~z2", p("0"))])
            .unwrap();
        assert_eq!(at, p("z1 - 1"));
        // simultaneous, not sequential
        let swapped = p("z1 + 2*z2")
            .substitute_named(&[("z1", p("z2")), ("z2", p("z1"))])
            .unwrap();
        assert_eq!(swapped, p("z2 + 2*z1"));
    }

    #[test]
    fn evaluation() {
        let sphere = p("z1*~z1 + z2*~z2 - 1");
        let pt = |a: i64, b: i64| {
            vec![("z1", g(a, 0)), ("z2", g(b, 0)), ("~z1", g(a, 0)), ("~z2", g(b, 0))]
        };
        assert_eq!(sphere.eval_named(&pt(1, 0)).unwrap(), GaussianRational::zero());
        assert_eq!(sphere.eval_named(&pt(0, 0)).unwrap(), g(-1, 0));
        assert!(matches!(
            sphere.eval_named(&[("z1", g(1, 0))]),
            Err(PolyError::Unbound(_))
        ));
    }

    #[test]
    fn derivative_and_division() {
        assert_eq!(p("z1^3*~z1 + 2*z1").derivative(0), p("3*z1^2*~z1 + 2"));
        let a = p("z1^2 - z2^2");
        assert_eq!(a.div_exact(&p("z1 - z2")), Some(p("z1 + z2")));
        assert_eq!(a.div_exact(&p("z1 + 2")), None);
    }

    #[test]
    fn coefficient_groups() {
        let q = p("z1^2*~z1 + 3*z1^2 + ~z2*z2 - 1");
        let groups = q.coefficients_in(&[0, 1]);
        assert_eq!(groups.len(), 3);
        assert_eq!(groups[0].1, p("~z1 + 3"));
    }

    #[test]
    fn display_format() {
        assert_eq!(p("z1*~z1 + z2*~z2 - 1").to_string(), "z1*~z1 + z2*~z2 - 1");
        assert_eq!(p("(1+2*i)*z1 - 3*i*z2 + 1/2").to_string(), "(1+2*i)*z1 - 3*i*z2 + 1/2");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("-z1^2").to_string(), "-z1^2");
    }
}
