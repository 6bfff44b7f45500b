//! Finite groups given by validated Cayley tables.
//!
//! Elements are the indices `0..order` and the identity is always index 0.
//! Every other structure in the crate (subgroups, homomorphisms, actions,
//! extensions) refers to elements by these indices.

mod abelian;
mod action;
mod aut;
pub mod catalog;
mod hom;
mod subgroup;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub use abelian::CyclicDecomposition;
pub use action::{semidirect_product, GroupAction, SemidirectProduct};
pub use aut::{automorphism_group, AutomorphismGroup};
pub use hom::{conjugacy_partition_homs, enumerate_homs, HomClass, Homomorphism};
pub use subgroup::{quotient_group, subgroup_as_group, Subgroup};

pub(crate) use abelian::increment;
pub(crate) use hom::{generating_sequence, same_group, search_homs};

/// Shared handle to an immutable group.
pub type GroupRef = Arc<FiniteGroup>;

/// Tables up to this order are checked for associativity on every triple.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;
const RANDOM_ASSOCIATIVITY_TRIPLES: usize = 10_000;

pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    names: Vec<String>,
    generators: OnceLock<Vec<usize>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from row-major Cayley table rows, validating every axiom.
    pub fn from_table(label: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidTable(format!(
                    "row {i} has length {}, expected {order}",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat(label, order, flat, None)
    }

    /// Builds a group from a flat row-major table with optional element names.
    pub fn from_flat(
        label: impl Into<String>,
        order: usize,
        table: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidTable("order must be positive".into()));
        }
        if table.len() != order * order {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                order * order
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x >= order) {
            return Err(Error::InvalidTable(format!(
                "entry {bad} outside [0, {order})"
            )));
        }
        let at = |a: usize, b: usize| table[a * order + b];

        let is_identity = |e: usize| (0..order).all(|x| at(e, x) == x && at(x, e) == x);
        if !is_identity(0) {
            return Err(match (1..order).find(|&e| is_identity(e)) {
                Some(e) => {
                    Error::InvalidTable(format!("identity must be element 0, found it at {e}"))
                }
                None => Error::InvalidTable("missing identity".into()),
            });
        }

        let mut inverses = vec![usize::MAX; order];
        for (x, slot) in inverses.iter_mut().enumerate() {
            match (0..order).find(|&y| at(x, y) == 0 && at(y, x) == 0) {
                Some(y) => *slot = y,
                None => {
                    return Err(Error::InvalidTable(format!(
                        "element {x} has no two-sided inverse"
                    )))
                }
            }
        }

        let associative_at = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if order <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !associative_at(a, b, c) {
                            return Err(Error::InvalidTable(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(order as u64);
            for _ in 0..RANDOM_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if !associative_at(a, b, c) {
                    return Err(Error::InvalidTable(format!(
                        "not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }

        let names = match names {
            Some(n) if n.len() == order => n,
            Some(n) => {
                return Err(Error::InvalidTable(format!(
                    "{} element names for a group of order {order}",
                    n.len()
                )))
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };

        Ok(FiniteGroup {
            label: label.into(),
            order,
            table,
            inverses,
            names,
            generators: OnceLock::new(),
        })
    }

    pub fn trivial() -> Self {
        Self::from_flat("C1", 1, vec![0], Some(vec!["e".into()])).expect("trivial group")
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub const fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g · x · g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    #[inline]
    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverses
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x >= self.order {
            return Err(Error::ElementOutOfRange {
                index: x,
                order: self.order,
            });
        }
        Ok(())
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    /// A short generating sequence, chosen greedily: each step adds the
    /// element that enlarges the generated subgroup the most (ties broken by
    /// smallest index). Empty for the trivial group.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| generating_sequence(self))
    }

    /// Direct product with elements `(a, b)` at index `a * |other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for a in 0..n {
            for b in 0..m {
                for c in 0..n {
                    for d in 0..m {
                        table.push(self.mul(a, c) * m + other.mul(b, d));
                    }
                }
            }
        }
        let names = (0..n)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.names[a], other.names[b]))
            .collect();
        FiniteGroup {
            label: format!("{}x{}", self.label, other.label),
            order: n * m,
            table,
            inverses: (0..n * m)
                .map(|i| self.inv(i / m) * m + other.inv(i % m))
                .collect(),
            names,
            generators: OnceLock::new(),
        }
    }

    /// Trusted constructor for tables built by the crate itself.
    pub(crate) fn from_trusted(
        label: String,
        order: usize,
        table: Vec<usize>,
        names: Vec<String>,
    ) -> FiniteGroup {
        debug_assert_eq!(table.len(), order * order);
        let mut inverses = vec![0; order];
        for x in 0..order {
            inverses[x] = (0..order)
                .find(|&y| table[x * order + y] == 0)
                .expect("trusted table has inverses");
        }
        FiniteGroup {
            label,
            order,
            table,
            inverses,
            names,
            generators: OnceLock::new(),
        }
    }

    /// Brute-force isomorphism test, intended for small orders only.
    pub fn is_isomorphic(&self, other: &FiniteGroup) -> bool {
        if self.order != other.order || self.is_abelian() != other.is_abelian() {
            return false;
        }
        let mut found = false;
        let _ = search_homs(
            self,
            other,
            |x| {
                let k = self.element_order(x);
                other
                    .elements()
                    .filter(|&y| other.element_order(y) == k)
                    .collect()
            },
            &crate::Budget {
                max_total_order: usize::MAX,
                max_hom_search: u64::MAX,
            },
            |images| {
                let mut seen = vec![false; other.order];
                if images
                    .iter()
                    .all(|&y| !std::mem::replace(&mut seen[y], true))
                {
                    found = true;
                    return false;
                }
                true
            },
        );
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_table() {
        assert!(matches!(
            FiniteGroup::from_table("x", &[]),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn two_by_two_table_is_c2() {
        let g = FiniteGroup::from_table("C2", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
        assert_eq!(g.element_order(1), 2);
    }

    #[test]
    fn rejects_missing_inverse() {
        let rows = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 0]];
        let err = FiniteGroup::from_table("bad", &rows).unwrap_err();
        assert!(err.to_string().contains("inverse"), "{err}");
    }

    #[test]
    fn rejects_identity_not_at_zero() {
        let rows = vec![vec![1, 0], vec![0, 1]];
        let err = FiniteGroup::from_table("bad", &rows).unwrap_err();
        assert!(err.to_string().contains("element 0"), "{err}");
    }

    #[test]
    fn rejects_non_associative_latin_square() {
        // A loop of order 5 with identity 0 and inverses, but not a group.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop", &rows).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }

    #[test]
    fn rejects_out_of_range_entry() {
        let rows = vec![vec![0, 1], vec![1, 2]];
        assert!(FiniteGroup::from_table("bad", &rows).is_err());
    }
}
