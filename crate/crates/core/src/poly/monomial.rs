use std::cmp::Ordering;

/// Exponent vector aligned with a [`VarTable`](super::VarTable).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div_into(&self, other: &Self) -> Option<Self> {
        self.divides(other)
            .then(|| Self(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True if every variable with a positive exponent lies in `mask`.
    pub fn supported_in(&self, mask: &[bool]) -> bool {
        self.0.iter().zip(mask).all(|(e, m)| *e == 0 || *m)
    }
}

/// Graded reverse lexicographic comparison on the variables selected by
/// `mask` (all variables when `None`).
pub(crate) fn grevlex_cmp(a: &[u32], b: &[u32], mask: Option<&[bool]>) -> Ordering {
    let sel = |i: usize| mask.is_none_or(|m| m[i]);
    let da: u32 = a.iter().enumerate().filter(|(i, _)| sel(*i)).map(|(_, e)| e).sum();
    let db: u32 = b.iter().enumerate().filter(|(i, _)| sel(*i)).map(|(_, e)| e).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if !sel(i) {
            continue;
        }
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

pub(crate) fn lex_cmp(a: &[u32], b: &[u32], mask: Option<&[bool]>) -> Ordering {
    for i in 0..a.len() {
        if mask.is_some_and(|m| !m[i]) {
            continue;
        }
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        // x > y > z: x*z < y^2 in grevlex, x*z > y^2 in lex
        let xz = [1, 0, 1];
        let yy = [0, 2, 0];
        assert_eq!(grevlex_cmp(&xz, &yy, None), Ordering::Less);
        assert_eq!(lex_cmp(&xz, &yy, None), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[1, 0, 0], &[0, 1, 0], None), Ordering::Greater);
        assert_eq!(grevlex_cmp(&[0, 0, 3], &[1, 1, 0], None), Ordering::Greater);
    }

    #[test]
    fn divisibility() {
        let a = Monomial(vec![1, 2]);
        let b = Monomial(vec![2, 2]);
        assert!(a.divides(&b));
        assert_eq!(a.div_into(&b), Some(Monomial(vec![1, 0])));
        assert_eq!(b.div_into(&a), None);
        assert_eq!(a.lcm(&Monomial(vec![0, 3])), Monomial(vec![1, 3]));
        assert!(Monomial(vec![1, 0]).coprime(&Monomial(vec![0, 4])));
    }
}
