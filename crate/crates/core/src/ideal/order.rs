use std::cmp::Ordering;

use crate::poly::{grevlex_cmp, lex_cmp, Monomial};

/// Monomial order on the variables of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    /// Lexicographic with table index 0 largest.
    Lex,
    /// Elimination order: compare the `elim` block by grevlex first, break
    /// ties with `inner` on the remaining variables.
    Block {
        elim: Vec<bool>,
        inner: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Elimination order for the variables in `elim`, grevlex inside each block.
    pub fn eliminating(nvars: usize, elim: &[usize]) -> Self {
        let mut mask = vec![false; nvars];
        for &i in elim {
            mask[i] = true;
        }
        Self::Block {
            elim: mask,
            inner: Box::new(Self::Grevlex),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.cmp_masked(&a.0, &b.0, None)
    }

    fn cmp_masked(&self, a: &[u32], b: &[u32], mask: Option<&[bool]>) -> Ordering {
        match self {
            Self::Grevlex => grevlex_cmp(a, b, mask),
            Self::Lex => lex_cmp(a, b, mask),
            Self::Block { elim, inner } => {
                let first: Vec<bool> = match mask {
                    Some(m) => elim.iter().zip(m).map(|(e, m)| *e && *m).collect(),
                    None => elim.clone(),
                };
                match grevlex_cmp(a, b, Some(&first)) {
                    Ordering::Equal => {}
                    o => return o,
                }
                let rest: Vec<bool> = match mask {
                    Some(m) => elim.iter().zip(m).map(|(e, m)| !*e && *m).collect(),
                    None => elim.iter().map(|e| !e).collect(),
                };
                inner.cmp_masked(a, b, Some(&rest))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Grevlex => "grevlex".into(),
            Self::Lex => "lex".into(),
            Self::Block { elim, inner } => {
                let idx: Vec<String> = elim
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e)
                    .map(|(i, _)| i.to_string())
                    .collect();
                format!("block([{}], {})", idx.join(","), inner.name())
            }
        }
    }
}
