//! Symbols and the append-only registry that owns them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU32, Ordering};

use crate::error::{Error, Result};

/// The role a symbol plays in the algebra.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymbolKind {
    /// Even coordinate `z`.
    EvenCoordinate,
    /// Odd coordinate `e`.
    OddCoordinate,
    /// Even partner `nu(e)`, invertible.
    EvenPartner,
    /// Odd partner `nu(z)`.
    OddPartner,
    /// Odd unit `nu(1)`.
    OddUnit,
    /// Partition-of-unity function; even, with a differential.
    Partition,
    /// Even constant parameter with zero differential.
    Parameter,
}

impl SymbolKind {
    pub const fn parity(self) -> u8 {
        match self {
            SymbolKind::EvenCoordinate
            | SymbolKind::EvenPartner
            | SymbolKind::Partition
            | SymbolKind::Parameter => 0,
            SymbolKind::OddCoordinate | SymbolKind::OddPartner | SymbolKind::OddUnit => 1,
        }
    }

    pub const fn is_even(self) -> bool {
        self.parity() == 0
    }

    /// Whether `d` acts non-trivially on the symbol.
    pub const fn has_differential(self) -> bool {
        !matches!(self, SymbolKind::Parameter)
    }

    /// Symbols that `nu` may act on as a generator.
    pub const fn is_generator(self) -> bool {
        !matches!(self, SymbolKind::Partition | SymbolKind::Parameter)
    }
}

/// Handle to a registered symbol. Ordering follows registration order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId {
    index: u32,
    kind: SymbolKind,
}

impl SymbolId {
    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn kind(self) -> SymbolKind {
        self.kind
    }

    pub fn parity(self) -> u8 {
        self.kind.parity()
    }

    pub fn is_even(self) -> bool {
        self.kind.is_even()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub chart: Option<usize>,
    pub kind: SymbolKind,
    partner: Option<SymbolId>,
}

impl Symbol {
    pub fn partner(&self) -> Option<SymbolId> {
        self.partner
    }
}

static NEXT_TAG: AtomicU32 = AtomicU32::new(1);

/// Append-only symbol table. Every registry carries a process-unique tag so
/// that elements built over different registries can be told apart.
#[derive(Debug)]
pub struct Registry {
    tag: u32,
    symbols: Vec<Symbol>,
    names: BTreeMap<String, SymbolId>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::new()
    }
}

impl Registry {
    pub fn new() -> Self {
        Registry {
            tag: NEXT_TAG.fetch_add(1, Ordering::Relaxed),
            symbols: Vec::new(),
            names: BTreeMap::new(),
        }
    }

    pub fn tag(&self) -> u32 {
        self.tag
    }

    pub fn register(&mut self, name: &str, kind: SymbolKind, chart: Option<usize>) -> Result<SymbolId> {
        if self.names.contains_key(name) {
            return Err(Error::DuplicateName(name.into()));
        }
        let id = SymbolId {
            index: self.symbols.len() as u32,
            kind,
        };
        self.symbols.push(Symbol {
            name: name.into(),
            chart,
            kind,
            partner: None,
        });
        self.names.insert(name.into(), id);
        Ok(id)
    }

    /// Registers a coordinate together with its nu-partner and links the two.
    pub fn register_pair(
        &mut self,
        name: &str,
        partner_name: &str,
        kind: SymbolKind,
        chart: Option<usize>,
    ) -> Result<(SymbolId, SymbolId)> {
        let partner_kind = match kind {
            SymbolKind::EvenCoordinate => SymbolKind::OddPartner,
            SymbolKind::OddCoordinate => SymbolKind::EvenPartner,
            other => return Err(Error::UndefinedNu(alloc::format!("{other:?} has no partner kind"))),
        };
        if self.names.contains_key(partner_name) {
            return Err(Error::DuplicateName(partner_name.into()));
        }
        let a = self.register(name, kind, chart)?;
        let b = self.register(partner_name, partner_kind, chart)?;
        self.symbols[a.index()].partner = Some(b);
        self.symbols[b.index()].partner = Some(a);
        Ok((a, b))
    }

    pub fn lookup(&self, name: &str) -> Option<SymbolId> {
        self.names.get(name).copied()
    }

    pub fn get(&self, id: SymbolId) -> &Symbol {
        &self.symbols[id.index()]
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id.index()].name
    }

    pub fn partner(&self, id: SymbolId) -> Option<SymbolId> {
        self.symbols[id.index()].partner
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = SymbolId> + '_ {
        self.symbols.iter().enumerate().map(|(i, s)| SymbolId {
            index: i as u32,
            kind: s.kind,
        })
    }

    /// All symbols attached to `chart`, in registration order.
    pub fn chart_symbols(&self, chart: usize) -> Vec<SymbolId> {
        self.ids().filter(|id| self.get(*id).chart == Some(chart)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_follows_kind() {
        let mut reg = Registry::new();
        let z = reg.register("z1", SymbolKind::EvenCoordinate, Some(1)).unwrap();
        let e = reg.register("e1", SymbolKind::OddCoordinate, Some(1)).unwrap();
        assert_eq!(z.parity(), 0);
        assert_eq!(e.parity(), 1);
        for kind in [SymbolKind::EvenPartner, SymbolKind::Partition, SymbolKind::Parameter] {
            assert_eq!(kind.parity(), 0);
        }
        for kind in [SymbolKind::OddPartner, SymbolKind::OddUnit] {
            assert_eq!(kind.parity(), 1);
        }
    }

    #[test]
    fn duplicate_names_rejected() {
        let mut reg = Registry::new();
        reg.register("z1", SymbolKind::EvenCoordinate, Some(1)).unwrap();
        assert_eq!(
            reg.register("z1", SymbolKind::EvenCoordinate, Some(1)),
            Err(Error::DuplicateName("z1".into()))
        );
        assert_eq!(reg.len(), 1);
    }

    #[test]
    fn pairs_are_linked() {
        let mut reg = Registry::new();
        let (e, nue) = reg.register_pair("e1", "nue1", SymbolKind::OddCoordinate, None).unwrap();
        assert_eq!(nue.kind(), SymbolKind::EvenPartner);
        assert_eq!(reg.partner(e), Some(nue));
        assert_eq!(reg.partner(nue), Some(e));
        assert_ne!(Registry::new().tag(), reg.tag());
    }
}
