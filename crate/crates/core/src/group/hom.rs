use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{subgroup_as_group, FiniteGroup, GroupRef, Subgroup};
use crate::budget::{Budget, SearchCounter};
use crate::error::{Error, Result};

/// A map between two finite groups, verified multiplicative on construction.
#[derive(Clone)]
pub struct Homomorphism {
    domain: GroupRef,
    codomain: GroupRef,
    images: Vec<usize>,
}

impl fmt::Debug for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hom({} -> {}){:?}",
            self.domain.label(),
            self.codomain.label(),
            self.images
        )
    }
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && self.same_groups(other)
    }
}

impl Eq for Homomorphism {}

pub(crate) fn same_group(a: &GroupRef, b: &GroupRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Homomorphism {
    pub fn new(domain: GroupRef, codomain: GroupRef, images: Vec<usize>) -> Result<Self> {
        if images.len() != domain.order() {
            return Err(Error::InvalidHomomorphism(format!(
                "{} images for a domain of order {}",
                images.len(),
                domain.order()
            )));
        }
        for &y in &images {
            codomain.check_element(y)?;
        }
        if images[0] != 0 {
            return Err(Error::InvalidHomomorphism(
                "identity is not sent to the identity".into(),
            ));
        }
        for x in domain.elements() {
            for y in domain.elements() {
                if images[domain.mul(x, y)] != codomain.mul(images[x], images[y]) {
                    return Err(Error::InvalidHomomorphism(format!(
                        "not multiplicative at ({}, {})",
                        domain.element_name(x),
                        domain.element_name(y)
                    )));
                }
            }
        }
        Ok(Homomorphism {
            domain,
            codomain,
            images,
        })
    }

    pub(crate) fn new_unchecked(domain: GroupRef, codomain: GroupRef, images: Vec<usize>) -> Self {
        debug_assert_eq!(images.len(), domain.order());
        Homomorphism {
            domain,
            codomain,
            images,
        }
    }

    pub fn identity(group: &GroupRef) -> Self {
        Self::new_unchecked(group.clone(), group.clone(), group.elements().collect())
    }

    pub fn trivial(domain: &GroupRef, codomain: &GroupRef) -> Self {
        Self::new_unchecked(domain.clone(), codomain.clone(), vec![0; domain.order()])
    }

    pub fn domain(&self) -> &GroupRef {
        &self.domain
    }

    pub fn codomain(&self) -> &GroupRef {
        &self.codomain
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn same_groups(&self, other: &Homomorphism) -> bool {
        same_group(&self.domain, &other.domain) && same_group(&self.codomain, &other.codomain)
    }

    pub fn kernel(&self) -> Subgroup {
        let ker: Vec<usize> = self
            .domain
            .elements()
            .filter(|&x| self.images[x] == 0)
            .collect();
        self.domain.generate(&ker)
    }

    pub fn image(&self) -> Subgroup {
        self.codomain.generate(&self.images)
    }

    /// Image of a subgroup of the domain.
    pub fn image_of(&self, h: &Subgroup) -> Subgroup {
        let imgs: Vec<usize> = h.elements().iter().map(|&x| self.images[x]).collect();
        self.codomain.generate(&imgs)
    }

    /// Preimage of a subgroup of the codomain.
    pub fn preimage(&self, h: &Subgroup) -> Subgroup {
        let pre: Vec<usize> = self
            .domain
            .elements()
            .filter(|&x| h.contains(self.images[x]))
            .collect();
        self.domain.generate(&pre)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.codomain.order()
    }

    /// `then ∘ self`
    pub fn then(&self, then: &Homomorphism) -> Result<Homomorphism> {
        if !same_group(&self.codomain, &then.domain) {
            return Err(Error::Mismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.domain.label(),
                self.codomain.label(),
                then.domain.label(),
                then.codomain.label()
            )));
        }
        Ok(Self::new_unchecked(
            self.domain.clone(),
            then.codomain.clone(),
            self.images.iter().map(|&y| then.images[y]).collect(),
        ))
    }

    /// Pointwise conjugate `x ↦ g·α(x)·g⁻¹`.
    pub fn conjugated_by(&self, g: usize) -> Homomorphism {
        let images = self
            .images
            .iter()
            .map(|&y| self.codomain.conjugate(g, y))
            .collect();
        Self::new_unchecked(self.domain.clone(), self.codomain.clone(), images)
    }

    /// Lexicographically smallest images array among all codomain conjugates.
    pub fn canonical_images(&self) -> Vec<usize> {
        canonical_conjugate(&self.codomain, &self.images)
    }

    pub fn is_conjugate_to(&self, other: &Homomorphism) -> bool {
        self.same_groups(other) && self.canonical_images() == other.canonical_images()
    }

    /// Pointwise product `x ↦ self(x)·other(x)`; fails unless it is again a homomorphism.
    pub fn pointwise_product(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if !self.same_groups(other) {
            return Err(Error::Mismatch(
                "pointwise product of unrelated maps".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(&a, &b)| self.codomain.mul(a, b))
            .collect();
        Homomorphism::new(self.domain.clone(), self.codomain.clone(), images)
    }

    /// Restriction to a subgroup of the domain, re-indexed over that subgroup.
    pub fn restrict(&self, h: &Subgroup) -> Result<Homomorphism> {
        let (sub, inclusion) = subgroup_as_group(&self.domain, h)?;
        let images = inclusion.images.iter().map(|&x| self.images[x]).collect();
        Ok(Self::new_unchecked(sub, self.codomain.clone(), images))
    }
}

pub(crate) fn canonical_conjugate(group: &FiniteGroup, images: &[usize]) -> Vec<usize> {
    let mut best = images.to_vec();
    let mut buf = vec![0; images.len()];
    for g in group.elements().skip(1) {
        for (slot, &y) in buf.iter_mut().zip(images) {
            *slot = group.conjugate(g, y);
        }
        if buf < best {
            best.copy_from_slice(&buf);
        }
    }
    best
}

pub(crate) fn generating_sequence(group: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut current = group.generate(&gens);
    while current.order() < group.order() {
        let mut best: Option<(usize, Subgroup)> = None;
        for x in group.elements() {
            if current.contains(x) {
                continue;
            }
            gens.push(x);
            let candidate = group.generate(&gens);
            gens.pop();
            if best
                .as_ref()
                .is_none_or(|(_, b)| candidate.order() > b.order())
            {
                best = Some((x, candidate));
            }
        }
        let (x, next) = best.expect("a proper subgroup misses some element");
        gens.push(x);
        current = next;
    }
    gens
}

/// Backtracking search over homomorphisms `domain → codomain`.
///
/// Generator images are drawn from `candidates(generator)` in the given
/// order; each partial assignment is extended multiplicatively over the
/// subgroup generated so far and rejected on the first conflict. `visit`
/// receives the full images array of every homomorphism found and returns
/// `false` to stop early. Returns `Ok(false)` if stopped early.
pub(crate) fn search_homs(
    domain: &FiniteGroup,
    codomain: &FiniteGroup,
    candidates: impl Fn(usize) -> Vec<usize>,
    budget: &Budget,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<bool> {
    let gens = domain.generators().to_vec();
    if gens.is_empty() {
        return Ok(visit(&[0]));
    }
    let choices: Vec<Vec<usize>> = gens.iter().map(|&g| candidates(g)).collect();
    let mut search = HomSearch {
        domain,
        codomain,
        gens: &gens,
        choices: &choices,
        assigned: vec![0; gens.len()],
        counter: SearchCounter::new(budget),
        map: vec![usize::MAX; domain.order()],
        queue: Vec::with_capacity(domain.order()),
    };
    search.descend(0, &mut visit)
}

struct HomSearch<'a> {
    domain: &'a FiniteGroup,
    codomain: &'a FiniteGroup,
    gens: &'a [usize],
    choices: &'a [Vec<usize>],
    assigned: Vec<usize>,
    counter: SearchCounter,
    map: Vec<usize>,
    queue: Vec<usize>,
}

impl HomSearch<'_> {
    fn descend(&mut self, level: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> Result<bool> {
        for &y in &self.choices[level] {
            self.counter.tick()?;
            self.assigned[level] = y;
            if !self.propagate(level + 1) {
                continue;
            }
            let keep_going = if level + 1 == self.gens.len() {
                visit(&self.map)
            } else {
                self.descend(level + 1, visit)?
            };
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Extends the first `k` generator images over the subgroup they generate
    /// by walking its Cayley graph; a map consistent on every edge is a homomorphism.
    fn propagate(&mut self, k: usize) -> bool {
        self.map.fill(usize::MAX);
        self.queue.clear();
        self.map[0] = 0;
        self.queue.push(0);
        let mut i = 0;
        while i < self.queue.len() {
            let a = self.queue[i];
            let fa = self.map[a];
            for j in 0..k {
                let b = self.domain.mul(a, self.gens[j]);
                let fb = self.codomain.mul(fa, self.assigned[j]);
                match self.map[b] {
                    usize::MAX => {
                        self.map[b] = fb;
                        self.queue.push(b);
                    }
                    existing if existing != fb => return false,
                    _ => {}
                }
            }
            i += 1;
        }
        true
    }
}

/// Every homomorphism `q → g`, each exactly once, ordered by generator images.
pub fn enumerate_homs(q: &GroupRef, g: &GroupRef, budget: &Budget) -> Result<Vec<Homomorphism>> {
    let orders: Vec<usize> = g.elements().map(|y| g.element_order(y)).collect();
    let mut out = Vec::new();
    search_homs(
        q,
        g,
        |x| {
            let n = q.element_order(x);
            g.elements()
                .filter(|&y| n.is_multiple_of(orders[y]))
                .collect()
        },
        budget,
        |images| {
            out.push(Homomorphism::new_unchecked(
                q.clone(),
                g.clone(),
                images.to_vec(),
            ));
            true
        },
    )?;
    Ok(out)
}

/// One class of homomorphisms under pointwise conjugation by the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomClass {
    /// Lexicographically smallest conjugate images array.
    pub canonical: Vec<usize>,
    /// Positions of the class members in the input list.
    pub members: Vec<usize>,
}

/// Partitions `homs` into classes under `α ~ g·α·g⁻¹`, ordered by canonical form.
pub fn conjugacy_partition_homs(homs: &[Homomorphism], g: &GroupRef) -> Result<Vec<HomClass>> {
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    if let Some(first) = homs.first() {
        for h in homs {
            if !same_group(h.codomain(), g) || !h.same_groups(first) {
                return Err(Error::Mismatch(
                    "homomorphisms do not share domain and codomain".into(),
                ));
            }
        }
    }
    for (i, h) in homs.iter().enumerate() {
        classes.entry(h.canonical_images()).or_default().push(i);
    }
    Ok(classes
        .into_iter()
        .map(|(canonical, members)| HomClass { canonical, members })
        .collect())
}
