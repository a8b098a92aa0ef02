use std::collections::HashMap;
use std::sync::Arc;

use super::PolyError;

/// Role a variable plays in a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarKind {
    /// Holomorphic coordinate (`z`, `w`, ...).
    Holo,
    /// Conjugate coordinate, written `~name` for the paired holomorphic one.
    Conj,
    /// Auxiliary variable with no conjugate partner.
    Param,
}

/// Ordered set of ring variables. Index 0 is the largest variable in every
/// lexicographic comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    kinds: Vec<VarKind>,
    partner: Vec<Option<usize>>,
    index: HashMap<String, usize>,
}

impl VarTable {
    pub fn builder() -> VarTableBuilder {
        VarTableBuilder::default()
    }

    /// `names` as holomorphic variables followed by their conjugates
    /// `~name` in the same order.
    pub fn with_conjugates<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>, PolyError> {
        let mut b = Self::builder();
        for n in names {
            b = b.holo(n.as_ref());
        }
        for n in names {
            b = b.conj_of(n.as_ref());
        }
        b.build()
    }

    /// Only parameter variables.
    pub fn params<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>, PolyError> {
        names
            .iter()
            .fold(Self::builder(), |b, n| b.param(n.as_ref()))
            .build()
    }

    pub fn empty() -> Arc<Self> {
        Self::builder().build().expect("empty table is valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self, i: usize) -> VarKind {
        self.kinds[i]
    }

    pub fn partner(&self, i: usize) -> Option<usize> {
        self.partner[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn holo_indices(&self) -> Vec<usize> {
        self.indices_of_kind(VarKind::Holo)
    }

    pub fn conj_indices(&self) -> Vec<usize> {
        self.indices_of_kind(VarKind::Conj)
    }

    fn indices_of_kind(&self, kind: VarKind) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.kinds[i] == kind).collect()
    }

    /// Table restricted to `keep` (in table order). Pairings survive only
    /// when both partners are kept; an orphaned conjugate becomes a parameter.
    pub fn restrict(&self, keep: &[usize]) -> Result<Arc<Self>, PolyError> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let kept: std::collections::HashSet<usize> = keep.iter().copied().collect();
        let mut b = Self::builder();
        for &i in &keep {
            let paired = self.partner[i].is_some_and(|p| kept.contains(&p));
            b = match (self.kinds[i], paired) {
                (VarKind::Holo, _) => b.holo(&self.names[i]),
                (VarKind::Conj, true) => {
                    let p = self.partner[i].unwrap();
                    b.conj_named(&self.names[i], &self.names[p])
                }
                _ => b.param(&self.names[i]),
            };
        }
        b.build()
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

#[derive(Default)]
pub struct VarTableBuilder {
    entries: Vec<(String, VarKind, Option<String>)>,
}

impl VarTableBuilder {
    pub fn holo(mut self, name: &str) -> Self {
        self.entries.push((name.to_string(), VarKind::Holo, None));
        self
    }

    /// Conjugate of an already-declared (or later-declared) holomorphic
    /// variable, named `~holo`.
    pub fn conj_of(self, holo: &str) -> Self {
        let name = format!("~{holo}");
        self.conj_named(&name, holo)
    }

    pub fn conj_named(mut self, name: &str, holo: &str) -> Self {
        self.entries
            .push((name.to_string(), VarKind::Conj, Some(holo.to_string())));
        self
    }

    pub fn param(mut self, name: &str) -> Self {
        self.entries.push((name.to_string(), VarKind::Param, None));
        self
    }

    pub fn build(self) -> Result<Arc<VarTable>, PolyError> {
        let mut index = HashMap::new();
        for (i, (name, _, _)) in self.entries.iter().enumerate() {
            if name.is_empty() || index.insert(name.clone(), i).is_some() {
                return Err(PolyError::BadTable(format!("duplicate or empty variable name `{name}`")));
            }
        }
        let mut partner = vec![None; self.entries.len()];
        for (i, (name, kind, holo)) in self.entries.iter().enumerate() {
            if *kind != VarKind::Conj {
                continue;
            }
            let holo = holo.as_ref().unwrap();
            let j = *index
                .get(holo)
                .ok_or_else(|| PolyError::BadTable(format!("`{name}` pairs with unknown `{holo}`")))?;
            if self.entries[j].1 != VarKind::Holo || partner[j].is_some() {
                return Err(PolyError::BadTable(format!("`{holo}` cannot pair with `{name}`")));
            }
            partner[i] = Some(j);
            partner[j] = Some(i);
        }
        Ok(Arc::new(VarTable {
            names: self.entries.iter().map(|e| e.0.clone()).collect(),
            kinds: self.entries.iter().map(|e| e.1).collect(),
            partner,
            index,
        }))
    }
}

impl VarTable {
    /// Copy of this table with extra parameter variables appended.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<Self>, PolyError> {
        let mut b = Self::builder();
        for i in 0..self.len() {
            b = match (self.kinds[i], self.partner[i]) {
                (VarKind::Holo, _) => b.holo(&self.names[i]),
                (VarKind::Conj, Some(p)) => b.conj_named(&self.names[i], &self.names[p]),
                _ => b.param(&self.names[i]),
            };
        }
        for e in extra {
            b = b.param(e.as_ref());
        }
        b.build()
    }

    /// A name not yet used in the table, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 0;
        while self.index.contains_key(&name) {
            k += 1;
            name = format!("{base}{k}");
        }
        name
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_is_an_involution() {
        let t = VarTable::with_conjugates(&["z1", "z2"]).unwrap();
        assert_eq!(t.len(), 4);
        for i in 0..t.len() {
            let p = t.partner(i).unwrap();
            assert_eq!(t.partner(p), Some(i));
            assert_ne!(t.kind(i), t.kind(p));
        }
        assert_eq!(t.index_of("~z2"), Some(3));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(VarTable::params(&["a", "a"]).is_err());
        assert!(VarTable::builder().conj_of("nope").build().is_err());
    }

    #[test]
    fn restrict_drops_orphan_pairing() {
        let t = VarTable::with_conjugates(&["z1", "z2"]).unwrap();
        let r = t.restrict(&[0, 3]).unwrap();
        assert_eq!(r.names(), &["z1".to_string(), "~z2".to_string()]);
        assert_eq!(r.partner(0), None);
        assert_eq!(r.kind(1), VarKind::Param);
    }
}
