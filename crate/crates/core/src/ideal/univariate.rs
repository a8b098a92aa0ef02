use std::sync::Arc;

use num_traits::{One, Zero};

use crate::poly::{GaussianRational, Monomial, Poly, VarTable};

/// Dense univariate polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<GaussianRational>);

impl UniPoly {
    pub fn from_coeffs(mut c: Vec<GaussianRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self(c)
    }

    /// Converts `p` if it involves no variable other than `var`.
    pub fn from_poly(p: &Poly, var: usize) -> Option<Self> {
        let mut c = vec![GaussianRational::zero(); p.degree_in(var) as usize + 1];
        for (m, a) in p.terms() {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            c[m.0[var] as usize] = a.clone();
        }
        Some(Self::from_coeffs(c))
    }

    pub fn to_poly(&self, table: &Arc<VarTable>, var: usize) -> Poly {
        Poly::from_terms(
            table,
            self.0
                .iter()
                .enumerate()
                .map(|(e, c)| (Monomial::var(table.len(), var, e as u32), c.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&GaussianRational> {
        self.0.last()
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().unwrap();
                Self(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(e, c)| c * &GaussianRational::from_integer(e as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &GaussianRational) -> GaussianRational {
        self.0
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().unwrap().inv().unwrap();
        let mut r = self.0.clone();
        let mut q = vec![GaussianRational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let c = r.last().unwrap() * &inv;
            for (i, dc) in d.0.iter().enumerate() {
                r[k + i] = &r[k + i] - &(&c * dc);
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `p / gcd(p, p')`.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// All roots in `Q(i)` when they can be found exactly (degree one or two,
    /// or a binomial `a x^e + b` with `e` in {1, 2, 4}); `None` otherwise.
    /// Repeated roots are listed once.
    pub fn exact_roots(&self) -> Option<Vec<GaussianRational>> {
        let p = self.monic();
        let deg = p.degree()?;
        let mut roots = match deg {
            0 => Vec::new(),
            1 => vec![-&p.0[0]],
            2 => {
                let (c, b) = (&p.0[0], &p.0[1]);
                let four = GaussianRational::from_integer(4);
                let disc = &(b * b) - &(&four * c);
                let s = disc.sqrt()?;
                let two = GaussianRational::from_integer(2);
                vec![&(&-b + &s) / &two, &(&-b - &s) / &two]
            }
            _ => {
                let binomial = p.0[1..deg].iter().all(|c| c.is_zero());
                if !binomial || !matches!(deg, 4) {
                    return None;
                }
                let base = (-&p.0[0]).root_pow2(4)?;
                let i = GaussianRational::i();
                vec![
                    base.clone(),
                    -&base,
                    &base * &i,
                    -&(&base * &i),
                ]
            }
        };
        roots.dedup();
        let mut uniq: Vec<GaussianRational> = Vec::new();
        for r in roots {
            if !uniq.contains(&r) {
                uniq.push(r);
            }
        }
        debug_assert!(uniq.iter().all(|r| p.eval(r).is_zero()));
        Some(uniq)
    }
}

impl One for UniPoly {
    fn one() -> Self {
        Self(vec![GaussianRational::one()])
    }
}

impl std::ops::Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly(Vec::new());
        }
        let mut c = vec![GaussianRational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UniPoly::from_coeffs(c)
    }
}
