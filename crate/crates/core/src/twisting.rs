//! Twisted models of the trivial `G`-cover over `Q`: permutation actions,
//! rational-point counts on fibers, and the specialization equivalence.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{conjugacy_partition_homs, enumerate_homs, GroupRef, Homomorphism, Subgroup};

/// The twist of the trivial `G`-Galois model over `Q` by `α: Q → G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistModel {
    alpha: Homomorphism,
}

impl TwistModel {
    pub fn new(alpha: Homomorphism) -> Self {
        TwistModel { alpha }
    }

    /// The untwisted model.
    pub fn trivial(q: &GroupRef, g: &GroupRef) -> Self {
        Self::new(Homomorphism::trivial(q, g))
    }

    pub fn g(&self) -> &GroupRef {
        self.alpha.codomain()
    }

    pub fn q(&self) -> &GroupRef {
        self.alpha.domain()
    }

    pub fn alpha(&self) -> &Homomorphism {
        &self.alpha
    }

    /// Images of the section `q ↦ (α(q), q)` of `G × Q → Q`.
    pub fn graph(&self) -> Vec<usize> {
        let m = self.q().order();
        self.q()
            .elements()
            .map(|x| self.alpha.apply(x) * m + x)
            .collect()
    }
}

/// A point, recorded by its specialization homomorphism `φ: Q → G` up to conjugacy.
#[derive(Debug, Clone)]
pub struct PointClass {
    phi: Homomorphism,
    canonical: Vec<usize>,
}

impl PartialEq for PointClass {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical && self.phi.same_groups(&other.phi)
    }
}

impl Eq for PointClass {}

impl PointClass {
    pub fn new(phi: Homomorphism) -> Self {
        let canonical = phi.canonical_images();
        PointClass { phi, canonical }
    }

    pub fn phi(&self) -> &Homomorphism {
        &self.phi
    }

    pub fn canonical(&self) -> &[usize] {
        &self.canonical
    }
}

fn check_point(model: &TwistModel, point: &PointClass) -> Result<()> {
    if !point.phi.same_groups(&model.alpha) {
        return Err(Error::Mismatch(format!(
            "point over ({}, {}) used with a model over ({}, {})",
            point.phi.codomain().label(),
            point.phi.domain().label(),
            model.g().label(),
            model.q().label()
        )));
    }
    Ok(())
}

/// `G × Q` acting on `G` by `(g, q)·h = g·h·α(q)⁻¹`.
#[derive(Debug, Clone)]
pub struct TwistAction {
    pub model: TwistModel,
    /// Indexed by `g·|Q| + q`.
    pub permutations: Vec<Vec<usize>>,
    pub transitive: bool,
}

impl TwistAction {
    /// Points of `G` fixed by every `(φ(q), q)`: `{h : φ(q)·h·α(q)⁻¹ = h for all q}`.
    pub fn fixed_points(&self, phi: &Homomorphism) -> Vec<usize> {
        let m = self.model.q().order();
        self.model
            .g()
            .elements()
            .filter(|&h| {
                self.model
                    .q()
                    .elements()
                    .all(|q| self.permutations[phi.apply(q) * m + q][h] == h)
            })
            .collect()
    }

    /// Elements of `G × Q` fixing the identity of `G`.
    pub fn identity_stabilizer(&self) -> Vec<usize> {
        (0..self.permutations.len())
            .filter(|&x| self.permutations[x][0] == 0)
            .collect()
    }
}

pub fn twist_action(model: &TwistModel) -> Result<TwistAction> {
    let (g, q) = (model.g(), model.q());
    let m = q.order();
    let alpha_inv: Vec<usize> = q.elements().map(|x| g.inv(model.alpha.apply(x))).collect();
    let permutations: Vec<Vec<usize>> = (0..g.order() * m)
        .map(|i| {
            let (a, x) = (i / m, i % m);
            g.elements()
                .map(|h| g.mul(g.mul(a, h), alpha_inv[x]))
                .collect()
        })
        .collect();

    // Multiplicativity on generators of each factor against every element.
    let gens: Vec<usize> = g
        .generators()
        .iter()
        .map(|&a| a * m)
        .chain(q.generators().iter().copied())
        .collect();
    for &x in &gens {
        for y in 0..permutations.len() {
            let (a, b) = (x / m, y / m);
            let xy = g.mul(a, b) * m + q.mul(x % m, y % m);
            let composed = permutations[y].iter().map(|&h| permutations[x][h]);
            if !composed.eq(permutations[xy].iter().copied()) {
                return Err(Error::TheoremViolation(
                    "twist action is not multiplicative".into(),
                ));
            }
        }
    }

    let mut seen = vec![false; g.order()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(h) = stack.pop() {
        for &x in &gens {
            let k = permutations[x][h];
            if !std::mem::replace(&mut seen[k], true) {
                stack.push(k);
            }
        }
    }
    Ok(TwistAction {
        model: model.clone(),
        permutations,
        transitive: seen.iter().all(|&b| b),
    })
}

/// Fixed-point count on the fiber over a point, checked against |C_G(img α)| or 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointCount {
    /// Counted directly on the twist action.
    pub count: usize,
    /// Whether `α` is `G`-conjugate to `φ`.
    pub is_lift: bool,
    /// `|C_G(img α)|`
    pub centralizer_order: usize,
}

pub fn count_rational_points(model: &TwistModel, point: &PointClass) -> Result<PointCount> {
    check_point(model, point)?;
    let action = twist_action(model)?;
    count_with(model, &action, point)
}

/// [`count_rational_points`] reusing a precomputed action.
pub fn count_with(
    model: &TwistModel,
    action: &TwistAction,
    point: &PointClass,
) -> Result<PointCount> {
    check_point(model, point)?;
    let count = action.fixed_points(&point.phi).len();
    let is_lift = model.alpha.canonical_images() == point.canonical;
    let centralizer_order = model.g().centralizer(model.alpha.images())?.order();
    let expected = if is_lift { centralizer_order } else { 0 };
    if count != expected {
        return Err(Error::TheoremViolation(format!(
            "fiber has {count} rational points, expected {expected}"
        )));
    }
    Ok(PointCount {
        count,
        is_lift,
        centralizer_order,
    })
}

/// Whether the twist is Galois, checked three independent ways.
pub fn is_twist_galois(model: &TwistModel) -> Result<bool> {
    let (g, q) = (model.g(), model.q());
    let center = g.center();
    let central = model.alpha.images().iter().all(|&x| center.contains(x));

    let product: GroupRef = Arc::new(g.direct_product(q));
    let graph = product.subgroup(&model.graph())?;
    let graph_normal = product.is_normal(&graph);

    let action = twist_action(model)?;
    let stabilizer = product.subgroup(&action.identity_stabilizer())?;
    let stabilizer_normal = product.is_normal(&stabilizer);

    if central != graph_normal || central != stabilizer_normal {
        return Err(Error::TheoremViolation(format!(
            "central image: {central}, graph normal: {graph_normal}, stabilizer normal: {stabilizer_normal}"
        )));
    }
    Ok(central)
}

/// `α⁻¹(Z(G))`, after confirming no other subgroup of `Q` fits better.
pub fn minimal_galois_subgroup(model: &TwistModel) -> Result<Subgroup> {
    let center = model.g().center();
    let minimal = model.alpha.preimage(&center);
    for h in model.q().all_subgroups() {
        let galois = h
            .elements()
            .iter()
            .all(|&x| center.contains(model.alpha.apply(x)));
        if galois != h.is_subset_of(&minimal) {
            return Err(Error::TheoremViolation(format!(
                "restriction to a subgroup of order {} disagrees with α⁻¹(Z(G))",
                h.order()
            )));
        }
    }
    Ok(minimal)
}

/// `ker φ`, the same for every conjugate of `φ`.
pub fn specialization_subgroup(point: &PointClass) -> Subgroup {
    point.phi.kernel()
}

#[derive(Debug, Clone)]
pub struct CruxReport {
    /// `ker φ`
    pub specialization: Subgroup,
    /// `α⁻¹(Z(G))`
    pub minimal_galois: Subgroup,
    /// Join of `ker(φ·α₀)` over all central `α₀: Q → G`.
    pub joint_specialization: Subgroup,
    /// Number of central `α₀` joined.
    pub central_models: usize,
    /// `G`-conjugate carrying `α|ker φ` to the trivial map.
    pub trivializing_element: usize,
}

pub fn crux_check(model: &TwistModel, point: &PointClass, budget: &Budget) -> Result<CruxReport> {
    check_point(model, point)?;
    if model.alpha.canonical_images() != point.canonical {
        return Err(Error::Precondition("alpha is not a lift of phi".into()));
    }
    let (g, q) = (model.g(), model.q());
    let specialization = specialization_subgroup(point);
    let minimal_galois = minimal_galois_subgroup(model)?;
    if !specialization.is_subset_of(&minimal_galois) {
        return Err(Error::TheoremViolation(
            "ker φ is not contained in α⁻¹(Z(G))".into(),
        ));
    }

    let trivializing_element = g
        .elements()
        .find(|&x| {
            specialization
                .elements()
                .iter()
                .all(|&k| g.conjugate(x, model.alpha.apply(k)) == 0)
        })
        .ok_or_else(|| {
            Error::TheoremViolation(
                "α restricted to ker φ is not conjugate to the trivial map".into(),
            )
        })?;

    let center = g.center();
    let mut joint = q.trivial_subgroup();
    let mut central_models = 0;
    for alpha0 in enumerate_homs(q, g, budget)? {
        if !alpha0.images().iter().all(|&x| center.contains(x)) {
            continue;
        }
        central_models += 1;
        let shifted = point.phi.pointwise_product(&alpha0)?;
        joint = q.join(&joint, &shifted.kernel());
    }
    if !joint.is_subset_of(&minimal_galois) {
        return Err(Error::TheoremViolation(
            "joined specialization kernels are not contained in α⁻¹(Z(G))".into(),
        ));
    }
    Ok(CruxReport {
        specialization,
        minimal_galois,
        joint_specialization: joint,
        central_models,
        trivializing_element,
    })
}

/// One isomorphism class of models over `(G, Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelClass {
    pub canonical: Vec<usize>,
    pub size: usize,
    pub galois: bool,
    /// `d = |C_G(img α)|`
    pub centralizer_order: usize,
}

pub fn classify_models(g: &GroupRef, q: &GroupRef, budget: &Budget) -> Result<Vec<ModelClass>> {
    let homs = enumerate_homs(q, g, budget)?;
    let center = g.center();
    conjugacy_partition_homs(&homs, g)?
        .into_iter()
        .map(|class| {
            let d = g.centralizer(&class.canonical)?.order();
            let size = class.members.len();
            if size * d != g.order() {
                return Err(Error::TheoremViolation(format!(
                    "class of size {size} with centralizer order {d} in a group of order {}",
                    g.order()
                )));
            }
            let galois = class.canonical.iter().all(|&x| center.contains(x));
            Ok(ModelClass {
                canonical: class.canonical,
                size,
                galois,
                centralizer_order: d,
            })
        })
        .collect()
}

/// Indices of `points` grouped by conjugacy of `φ`, ordered by canonical form.
pub fn point_partition(points: &[PointClass]) -> Result<Vec<Vec<usize>>> {
    let Some(first) = points.first() else {
        return Ok(Vec::new());
    };
    let g = first.phi.codomain();
    let homs: Vec<Homomorphism> = points.iter().map(|p| p.phi.clone()).collect();
    Ok(conjugacy_partition_homs(&homs, g)?
        .into_iter()
        .map(|c| c.members)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberClass {
    pub canonical: Vec<usize>,
    pub members: Vec<usize>,
    /// Rational points on each fiber over this class.
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationReport {
    pub classes: Vec<FiberClass>,
    pub center_order: usize,
    /// `d` on the class of `α`, if that class occurs among the points.
    pub lifted_count: Option<usize>,
    /// Number of distinct `G`-conjugates of `α`.
    pub conjugate_models: usize,
}

pub fn specialization_report(
    model: &TwistModel,
    points: &[PointClass],
) -> Result<SpecializationReport> {
    for p in points {
        check_point(model, p)?;
    }
    let g = model.g();
    let action = twist_action(model)?;
    let center_order = g.center().order();
    let conjugates: BTreeSet<Vec<usize>> = g
        .elements()
        .map(|x| model.alpha.conjugated_by(x).images().to_vec())
        .collect();
    let conjugate_models = conjugates.len();

    let mut classes = Vec::new();
    let mut lifted_count = None;
    for members in point_partition(points)? {
        let counts = members
            .iter()
            .map(|&i| count_with(model, &action, &points[i]))
            .collect::<Result<Vec<_>>>()?;
        let count = counts[0].count;
        if counts.iter().any(|c| c.count != count) {
            return Err(Error::TheoremViolation(
                "rational point counts differ within a class".into(),
            ));
        }
        if counts[0].is_lift {
            if !count.is_multiple_of(center_order) || !g.order().is_multiple_of(count) {
                return Err(Error::TheoremViolation(format!(
                    "d = {count} with |Z(G)| = {center_order}, |G| = {}",
                    g.order()
                )));
            }
            if conjugate_models * count != g.order() {
                return Err(Error::TheoremViolation(format!(
                    "{conjugate_models} conjugate models but |G|/d = {}",
                    g.order() / count
                )));
            }
            lifted_count = Some(count);
        } else if count != 0 {
            return Err(Error::TheoremViolation(
                "fiber over an inequivalent point has rational points".into(),
            ));
        }
        classes.push(FiberClass {
            canonical: points[members[0]].canonical.clone(),
            members,
            count,
        });
    }
    Ok(SpecializationReport {
        classes,
        center_order,
        lifted_count,
        conjugate_models,
    })
}

/// Whether translating every point by the central `α₀` leaves the partition unchanged.
pub fn model_independence_check(alpha0: &Homomorphism, points: &[PointClass]) -> Result<bool> {
    let g = alpha0.codomain();
    let center = g.center();
    if !alpha0.images().iter().all(|&x| center.contains(x)) {
        return Err(Error::Precondition(
            "alpha0 does not have central image".into(),
        ));
    }
    let translated = points
        .iter()
        .map(|p| {
            if !p.phi.same_groups(alpha0) {
                return Err(Error::Mismatch(
                    "point and alpha0 over different groups".into(),
                ));
            }
            Ok(PointClass::new(p.phi.pointwise_product(alpha0)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let as_sets = |parts: Vec<Vec<usize>>| -> BTreeSet<Vec<usize>> { parts.into_iter().collect() };
    Ok(as_sets(point_partition(points)?) == as_sets(point_partition(&translated)?))
}

pub fn restrict_model(model: &TwistModel, h: &Subgroup) -> Result<TwistModel> {
    Ok(TwistModel::new(model.alpha.restrict(h)?))
}

/// All points `φ ∈ Hom(Q, G)`.
pub fn all_points(q: &GroupRef, g: &GroupRef, budget: &Budget) -> Result<Vec<PointClass>> {
    Ok(enumerate_homs(q, g, budget)?
        .into_iter()
        .map(PointClass::new)
        .collect())
}
