use std::collections::HashMap;
use std::sync::Arc;

use super::{search_homs, FiniteGroup, GroupAction, GroupRef, Homomorphism};
use crate::budget::Budget;
use crate::error::{Error, Result};

/// `Aut(G)` as an abstract group together with its realization as
/// permutations of `G`'s element indices. Element `i` of `group` is the
/// automorphism `perms[i]`; products compose as `(σ·τ)(x) = σ(τ(x))`.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub base: GroupRef,
    pub group: GroupRef,
    pub perms: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl AutomorphismGroup {
    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    /// The action of `q` on the base group through `hom: q → Aut(G)`.
    pub fn action_from(&self, hom: &Homomorphism) -> Result<GroupAction> {
        if !Arc::ptr_eq(hom.codomain(), &self.group) && **hom.codomain() != *self.group {
            return Err(Error::Mismatch(
                "homomorphism does not land in Aut(G)".into(),
            ));
        }
        let perms = hom
            .images()
            .iter()
            .map(|&a| self.perms[a].clone())
            .collect();
        Ok(GroupAction::new_unchecked(
            hom.domain().clone(),
            self.base.clone(),
            perms,
        ))
    }

    /// Every action of `q` on the base group by automorphisms.
    pub fn all_actions(&self, q: &GroupRef, budget: &Budget) -> Result<Vec<GroupAction>> {
        super::enumerate_homs(q, &self.group, budget)?
            .iter()
            .map(|h| self.action_from(h))
            .collect()
    }

    /// The inner automorphism `x ↦ g·x·g⁻¹` as an element of `Aut(G)`.
    pub fn inner(&self, g: usize) -> usize {
        let perm: Vec<usize> = self
            .base
            .elements()
            .map(|x| self.base.conjugate(g, x))
            .collect();
        self.index[&perm]
    }
}

/// Enumerates the bijective endomorphisms of `g` and assembles them into a group.
pub fn automorphism_group(g: &GroupRef, budget: &Budget) -> Result<AutomorphismGroup> {
    let orders: Vec<usize> = g.elements().map(|x| g.element_order(x)).collect();
    let mut perms = Vec::new();
    search_homs(
        g,
        g,
        |x| g.elements().filter(|&y| orders[y] == orders[x]).collect(),
        budget,
        |images| {
            let mut seen = vec![false; images.len()];
            if images
                .iter()
                .all(|&y| !std::mem::replace(&mut seen[y], true))
            {
                perms.push(images.to_vec());
            }
            true
        },
    )?;
    // The identity permutation is the lexicographic minimum, so it lands at 0.
    perms.sort();
    let index: HashMap<Vec<usize>, usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    let k = perms.len();
    let mut table = Vec::with_capacity(k * k);
    for s in &perms {
        for t in &perms {
            let st: Vec<usize> = t.iter().map(|&x| s[x]).collect();
            table.push(index[&st]);
        }
    }
    let names = (0..k).map(|i| format!("φ{i}")).collect();
    let group = Arc::new(FiniteGroup::from_trusted(
        format!("Aut({})", g.label()),
        k,
        table,
        names,
    ));
    Ok(AutomorphismGroup {
        base: g.clone(),
        group,
        perms,
        index,
    })
}
