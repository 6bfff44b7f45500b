//! Group extensions `1 → G → Γ → Q → 1`, their sections, and the minimal
//! subgroup of `Q` over which a section's model becomes Galois.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{
    automorphism_group, quotient_group, same_group, search_homs, semidirect_product,
    subgroup_as_group, GroupAction, GroupRef, Homomorphism, SemidirectProduct, Subgroup,
};

/// A short exact sequence `1 → G →ι Γ →π Q → 1`.
#[derive(Debug, Clone)]
pub struct GroupExtension {
    kernel: GroupRef,
    total: GroupRef,
    quotient: GroupRef,
    iota: Homomorphism,
    pi: Homomorphism,
    kernel_image: Subgroup,
}

impl GroupExtension {
    /// Validates exactness: `ι` injective, `π` surjective, `img ι = ker π`.
    pub fn new(iota: Homomorphism, pi: Homomorphism) -> Result<Self> {
        if !same_group(iota.codomain(), pi.domain()) {
            return Err(Error::InvalidExtension(
                "iota and pi do not share the total group".into(),
            ));
        }
        if !iota.is_injective() {
            return Err(Error::InvalidExtension("iota is not injective".into()));
        }
        if !pi.is_surjective() {
            return Err(Error::InvalidExtension("pi is not surjective".into()));
        }
        let kernel_image = iota.image();
        if kernel_image != pi.kernel() {
            return Err(Error::InvalidExtension(
                "image of iota differs from the kernel of pi".into(),
            ));
        }
        Ok(GroupExtension {
            kernel: iota.domain().clone(),
            total: pi.domain().clone(),
            quotient: pi.codomain().clone(),
            iota,
            pi,
            kernel_image,
        })
    }

    /// The split extension `G ⋊_θ Q`; its canonical section is `q ↦ q`.
    pub fn semidirect(g: &GroupRef, q: &GroupRef, theta: &GroupAction) -> Result<Self> {
        Ok(Self::from_semidirect(&semidirect_product(g, q, theta)?))
    }

    pub fn from_semidirect(sd: &SemidirectProduct) -> Self {
        let kernel_image = sd.iota.image();
        GroupExtension {
            kernel: sd.iota.domain().clone(),
            total: sd.group.clone(),
            quotient: sd.pi.codomain().clone(),
            iota: sd.iota.clone(),
            pi: sd.pi.clone(),
            kernel_image,
        }
    }

    pub fn direct_product(g: &GroupRef, q: &GroupRef) -> Self {
        Self::semidirect(g, q, &GroupAction::trivial(q, g))
            .expect("the trivial action is always valid")
    }

    /// `1 → N → Γ → Γ/N → 1` for a normal subgroup `N`.
    pub fn from_quotient(total: &GroupRef, n: &Subgroup) -> Result<Self> {
        let (_, projection) = quotient_group(total, n)?;
        let (_, inclusion) = subgroup_as_group(total, n)?;
        Self::new(inclusion, projection)
    }

    pub fn kernel_group(&self) -> &GroupRef {
        &self.kernel
    }

    pub fn total_group(&self) -> &GroupRef {
        &self.total
    }

    pub fn quotient_group(&self) -> &GroupRef {
        &self.quotient
    }

    pub fn iota(&self) -> &Homomorphism {
        &self.iota
    }

    pub fn pi(&self) -> &Homomorphism {
        &self.pi
    }

    /// `ι(G)` as a subgroup of `Γ`.
    pub fn kernel_image(&self) -> &Subgroup {
        &self.kernel_image
    }

    /// Validates `images` as a section `Q → Γ`.
    pub fn section(&self, images: Vec<usize>) -> Result<Section> {
        let map = Homomorphism::new(self.quotient.clone(), self.total.clone(), images)
            .map_err(|e| Error::NotASection(e.to_string()))?;
        let s = Section { map };
        self.check_section(&s)?;
        Ok(s)
    }

    fn check_section(&self, s: &Section) -> Result<()> {
        if !same_group(s.map.domain(), &self.quotient) || !same_group(s.map.codomain(), &self.total)
        {
            return Err(Error::NotASection(
                "section belongs to another extension".into(),
            ));
        }
        for q in self.quotient.elements() {
            if self.pi.apply(s.map.apply(q)) != q {
                return Err(Error::NotASection(format!(
                    "pi(s({})) differs from {}",
                    self.quotient.element_name(q),
                    self.quotient.element_name(q)
                )));
            }
        }
        Ok(())
    }

    /// `ι⁻¹` on `ι(G)`; `usize::MAX` elsewhere.
    fn iota_inverse(&self) -> Vec<usize> {
        let mut inv = vec![usize::MAX; self.total.order()];
        for g in self.kernel.elements() {
            inv[self.iota.apply(g)] = g;
        }
        inv
    }
}

/// A homomorphic right inverse of `π`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    map: Homomorphism,
}

impl Section {
    pub fn map(&self) -> &Homomorphism {
        &self.map
    }

    pub fn images(&self) -> &[usize] {
        self.map.images()
    }

    pub fn image(&self) -> Subgroup {
        self.map.image()
    }
}

/// Every section of `ext`, in the deterministic order of the backtracking search.
pub fn enumerate_sections(ext: &GroupExtension, budget: &Budget) -> Result<Vec<Section>> {
    sections_up_to(ext, budget, usize::MAX)
}

/// At most `limit` sections, in the same order as [`enumerate_sections`].
pub fn sections_up_to(ext: &GroupExtension, budget: &Budget, limit: usize) -> Result<Vec<Section>> {
    budget.check_total_order(ext.total.order())?;
    let (total, quotient) = (&ext.total, &ext.quotient);
    let mut fibers = vec![Vec::new(); quotient.order()];
    for x in total.elements() {
        fibers[ext.pi.apply(x)].push(x);
    }
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    search_homs(
        quotient,
        total,
        |q| {
            let n = quotient.element_order(q);
            fibers[q]
                .iter()
                .copied()
                .filter(|&x| total.element_order(x) == n)
                .collect()
        },
        budget,
        |images| {
            out.push(Section {
                map: Homomorphism::new_unchecked(quotient.clone(), total.clone(), images.to_vec()),
            });
            out.len() < limit
        },
    )?;
    Ok(out)
}

/// Subgroups `H ≤ Γ` with `H ∩ ι(G) = {e}` and `π(H) = Q`, in subgroup order.
pub fn complements_of_kernel(ext: &GroupExtension, budget: &Budget) -> Result<Vec<Subgroup>> {
    budget.check_total_order(ext.total.order())?;
    let q = ext.quotient.order();
    Ok(ext
        .total
        .all_subgroups()
        .into_iter()
        .filter(|h| {
            h.order() == q
                && h.intersection(&ext.kernel_image).is_trivial()
                && ext.pi.image_of(h).order() == q
        })
        .collect())
}

fn centralizes_kernel(ext: &GroupExtension, elements: &[usize]) -> bool {
    elements.iter().all(|&m| {
        ext.kernel_image
            .elements()
            .iter()
            .all(|&g| ext.total.commutes(m, g))
    })
}

/// Whether the model of `s` is Galois: `img(s)` commutes with `ι(G)`.
///
/// Normality of `img(s)` in `Γ` is computed as well; disagreement is reported
/// as a [`Error::TheoremViolation`].
pub fn is_model_galois(ext: &GroupExtension, s: &Section) -> Result<bool> {
    ext.check_section(s)?;
    let img = s.image();
    let commutes = centralizes_kernel(ext, img.elements());
    let normal = ext.total.is_normal(&img);
    if commutes != normal {
        return Err(Error::TheoremViolation(format!(
            "section image centralizes the kernel: {commutes}, is normal: {normal}"
        )));
    }
    Ok(commutes)
}

/// Everything the minimal-descent computation produces for one section.
#[derive(Debug, Clone)]
pub struct DescentReport {
    pub section: Section,
    /// `img(s) ∩ C_Γ(ι(G))`
    pub v: Subgroup,
    /// `⟨ι(G), V⟩`
    pub gv: Subgroup,
    /// `π(V) ≤ Q`
    pub e_subgroup: Subgroup,
    /// `img(s)/V`
    pub galois_group_e: GroupRef,
    /// `img(s) → img(s)/V`, indexed by elements of `Γ` (`usize::MAX` off `img(s)`).
    pub galois_projection: Vec<usize>,
    /// `img(s)/V ↪ Aut(G)` by conjugation.
    pub aut_embedding: Homomorphism,
    /// Number of subgroups of `Q` on which Galois-ness was compared with containment in `E`.
    pub subgroups_scanned: usize,
}

/// Computes `V`, `GV`, `E = π(V)`, `Gal(E/K) = img(s)/V` and its embedding into
/// `Aut(G)`, then checks every identity those objects are known to satisfy.
pub fn minimal_descent(
    ext: &GroupExtension,
    s: &Section,
    budget: &Budget,
) -> Result<DescentReport> {
    ext.check_section(s)?;
    let total = &ext.total;
    let img = s.image();
    let centralizer = total.centralizer(ext.kernel_image.elements())?;
    let v = img.intersection(&centralizer);
    if !total.is_normal(&v) {
        return Err(Error::TheoremViolation(
            "V is not normal in the total group".into(),
        ));
    }
    let mut gv_gens = ext.kernel_image.elements().to_vec();
    gv_gens.extend_from_slice(v.elements());
    let gv = total.generate(&gv_gens);
    let e_subgroup = ext.pi.image_of(&v);
    if !ext.quotient.is_normal(&e_subgroup) {
        return Err(Error::TheoremViolation(
            "E subgroup is not normal in Q".into(),
        ));
    }

    // img(s)/V, computed inside img(s) viewed as a group of its own.
    let (m_group, inclusion) = subgroup_as_group(total, &img)?;
    let v_local = inclusion.preimage(&v);
    let (galois_group_e, local_projection) = quotient_group(&m_group, &v_local)?;
    let mut galois_projection = vec![usize::MAX; total.order()];
    for (i, &x) in inclusion.images().iter().enumerate() {
        galois_projection[x] = local_projection.apply(i);
    }

    check_quotient_isomorphism(ext, s, &e_subgroup, &galois_group_e, &galois_projection)?;

    let aut = automorphism_group(&ext.kernel, budget)?;
    let iota_inv = ext.iota_inverse();
    let mut reps = vec![usize::MAX; galois_group_e.order()];
    for &m in img.elements() {
        let c = galois_projection[m];
        if reps[c] == usize::MAX {
            reps[c] = m;
        }
    }
    let mut images = Vec::with_capacity(reps.len());
    for &m in &reps {
        let perm: Vec<usize> = ext
            .kernel
            .elements()
            .map(|g| iota_inv[total.conjugate(m, ext.iota.apply(g))])
            .collect();
        let a = aut.index_of(&perm).ok_or_else(|| {
            Error::TheoremViolation("conjugation does not induce an automorphism".into())
        })?;
        images.push(a);
    }
    let aut_embedding = Homomorphism::new(galois_group_e.clone(), aut.group.clone(), images)
        .map_err(|e| Error::TheoremViolation(format!("conjugation map: {e}")))?;
    if !aut_embedding.is_injective() {
        return Err(Error::TheoremViolation(
            "img(s)/V does not embed into Aut(G)".into(),
        ));
    }

    let subgroups_scanned = check_minimality(ext, s, &e_subgroup)?;

    Ok(DescentReport {
        section: s.clone(),
        v,
        gv,
        e_subgroup,
        galois_group_e,
        galois_projection,
        aut_embedding,
        subgroups_scanned,
    })
}

/// `qE ↦ s(q)V` must be a well-defined isomorphism `Q/E → img(s)/V`.
fn check_quotient_isomorphism(
    ext: &GroupExtension,
    s: &Section,
    e_subgroup: &Subgroup,
    galois: &GroupRef,
    galois_projection: &[usize],
) -> Result<()> {
    let (qe, qe_projection) = quotient_group(&ext.quotient, e_subgroup)?;
    let mut map = vec![usize::MAX; qe.order()];
    for q in ext.quotient.elements() {
        let target = galois_projection[s.map.apply(q)];
        let slot = &mut map[qe_projection.apply(q)];
        if *slot != usize::MAX && *slot != target {
            return Err(Error::TheoremViolation(
                "Q/E → img(s)/V is not well defined".into(),
            ));
        }
        *slot = target;
    }
    let iso = Homomorphism::new(qe, galois.clone(), map)
        .map_err(|e| Error::TheoremViolation(format!("Q/E → img(s)/V: {e}")))?;
    if !iso.is_injective() || !iso.is_surjective() {
        return Err(Error::TheoremViolation(
            "Q/E is not isomorphic to img(s)/V".into(),
        ));
    }
    Ok(())
}

/// Over every subgroup `H ≤ Q`, the restricted model is Galois exactly when `H ⊆ E`.
fn check_minimality(ext: &GroupExtension, s: &Section, e_subgroup: &Subgroup) -> Result<usize> {
    let subgroups = ext.quotient.all_subgroups();
    for h in &subgroups {
        let restricted: Vec<usize> = h.elements().iter().map(|&q| s.map.apply(q)).collect();
        let galois = centralizes_kernel(ext, &restricted);
        let inside = h.is_subset_of(e_subgroup);
        if galois != inside {
            return Err(Error::TheoremViolation(format!(
                "restriction to a subgroup of order {} is Galois: {galois}, inside E: {inside}",
                h.order()
            )));
        }
    }
    Ok(subgroups.len())
}

/// Whether `img(s) ∩ C_Γ(ι(G))` equals the normal core of `img(s)` in `Γ`.
pub fn verify_normal_core_identity(ext: &GroupExtension, s: &Section) -> Result<bool> {
    ext.check_section(s)?;
    let img = s.image();
    let v = img.intersection(&ext.total.centralizer(ext.kernel_image.elements())?);
    let core = ext.total.normal_core(&img)?;
    Ok(v == core)
}

/// `Γ/V` next to `G ⋊_γ (img(s)/V)` and the map `jm ↦ (j, mV)` between them.
#[derive(Debug, Clone)]
pub struct QuotientDecomposition {
    pub quotient: GroupRef,
    pub quotient_projection: Homomorphism,
    pub semidirect: SemidirectProduct,
    /// `Γ → G ⋊ (img(s)/V)`, surjective with kernel `V`.
    pub map: Homomorphism,
    /// The induced isomorphism `Γ/V → G ⋊ (img(s)/V)`.
    pub induced: Homomorphism,
}

pub fn decompose_quotient(
    ext: &GroupExtension,
    s: &Section,
    budget: &Budget,
) -> Result<QuotientDecomposition> {
    let report = minimal_descent(ext, s, budget)?;
    decompose_with(ext, &report, budget)
}

/// [`decompose_quotient`] reusing an existing descent report.
pub fn decompose_with(
    ext: &GroupExtension,
    report: &DescentReport,
    budget: &Budget,
) -> Result<QuotientDecomposition> {
    let total = &ext.total;
    let (quotient, quotient_projection) = quotient_group(total, &report.v)?;
    let h = &report.galois_group_e;
    let aut = automorphism_group(&ext.kernel, budget)?;
    let perms = h
        .elements()
        .map(|c| aut.perms[report.aut_embedding.apply(c)].clone())
        .collect();
    let gamma = GroupAction::new(h.clone(), ext.kernel.clone(), perms)
        .map_err(|e| Error::TheoremViolation(format!("induced action: {e}")))?;
    let semidirect = semidirect_product(&ext.kernel, h, &gamma)?;

    let iota_inv = ext.iota_inverse();
    let hn = h.order();
    let mut images = Vec::with_capacity(total.order());
    for x in total.elements() {
        let m = report.section.map.apply(ext.pi.apply(x));
        let j = iota_inv[total.mul(x, total.inv(m))];
        if j == usize::MAX {
            return Err(Error::TheoremViolation("x·m⁻¹ is not in ι(G)".into()));
        }
        images.push(j * hn + report.galois_projection[m]);
    }
    let map = Homomorphism::new(total.clone(), semidirect.group.clone(), images)
        .map_err(|e| Error::TheoremViolation(format!("jm ↦ (j, mV): {e}")))?;
    if map.kernel() != report.v || !map.is_surjective() {
        return Err(Error::TheoremViolation(
            "jm ↦ (j, mV) is not surjective with kernel V".into(),
        ));
    }
    let mut induced_images = vec![usize::MAX; quotient.order()];
    for x in total.elements() {
        induced_images[quotient_projection.apply(x)] = map.apply(x);
    }
    let induced = Homomorphism::new(quotient.clone(), semidirect.group.clone(), induced_images)
        .map_err(|e| Error::TheoremViolation(format!("induced map: {e}")))?;
    if !induced.is_injective() || !induced.is_surjective() {
        return Err(Error::TheoremViolation(
            "Γ/V → G ⋊ (img(s)/V) is not bijective".into(),
        ));
    }
    Ok(QuotientDecomposition {
        quotient,
        quotient_projection,
        semidirect,
        map,
        induced,
    })
}

fn is_standard_direct_product(ext: &GroupExtension) -> bool {
    let (n, m) = (ext.kernel.order(), ext.quotient.order());
    *ext.total == ext.kernel.direct_product(&ext.quotient)
        && ext
            .iota
            .images()
            .iter()
            .enumerate()
            .all(|(g, &x)| x == g * m)
        && ext.pi.images().iter().enumerate().all(|(x, &q)| q == x % m)
        && ext.total.order() == n * m
}

/// From a Galois section `s` of `G × Q → Q` and a surjection `ε: Q → G`,
/// builds `s'(q) = (ε(q)·g_q, q)` where `s(q) = (g_q, q)`. For nonabelian `G`
/// the result is a section whose model is not Galois.
pub fn nondescending_model_construction(
    ext: &GroupExtension,
    epsilon: &Homomorphism,
    s: &Section,
) -> Result<Section> {
    let (g, q) = (&ext.kernel, &ext.quotient);
    if g.is_abelian() {
        return Err(Error::Precondition(format!("{} is abelian", g.label())));
    }
    if !is_standard_direct_product(ext) {
        return Err(Error::Precondition(
            "extension is not the direct product G x Q".into(),
        ));
    }
    if !same_group(epsilon.domain(), q) || !same_group(epsilon.codomain(), g) {
        return Err(Error::Mismatch("epsilon is not a map Q → G".into()));
    }
    if !epsilon.is_surjective() {
        return Err(Error::Precondition("epsilon is not surjective".into()));
    }
    ext.check_section(s)?;
    if !centralizes_kernel(ext, s.image().elements()) {
        return Err(Error::Precondition(
            "section does not centralize G x 1".into(),
        ));
    }
    let m = q.order();
    let images = q
        .elements()
        .map(|x| g.mul(epsilon.apply(x), s.map.apply(x) / m) * m + x)
        .collect();
    let s_prime = ext
        .section(images)
        .map_err(|e| Error::TheoremViolation(format!("constructed map: {e}")))?;
    if is_model_galois(ext, &s_prime)? {
        return Err(Error::TheoremViolation(
            "constructed section is Galois".into(),
        ));
    }
    Ok(s_prime)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog::build;
    use crate::group::FiniteGroup;
    use std::sync::Arc;

    fn budget() -> Budget {
        Budget::default()
    }

    fn inversion(q: &GroupRef, g: &GroupRef) -> GroupAction {
        let id: Vec<usize> = g.elements().collect();
        let inv: Vec<usize> = g.elements().map(|x| g.inv(x)).collect();
        GroupAction::new(q.clone(), g.clone(), vec![id, inv]).unwrap()
    }

    fn s3_as_semidirect() -> GroupExtension {
        let (c3, c2) = (build("C3").unwrap(), build("C2").unwrap());
        GroupExtension::semidirect(&c3, &c2, &inversion(&c2, &c3)).unwrap()
    }

    /// `S3 × C2` with the section `t ↦ ((1 2), t)`.
    fn s3_x_c2_with_transposition() -> (GroupExtension, Section) {
        let (s3, c2) = (build("S3").unwrap(), build("C2").unwrap());
        let ext = GroupExtension::direct_product(&s3, &c2);
        let t = (1..6).find(|&x| s3.element_name(x) == "(1 2)").unwrap();
        let s = ext.section(vec![0, t * 2 + 1]).unwrap();
        (ext, s)
    }

    #[test]
    fn section_counts() {
        let c2 = build("C2").unwrap();
        let ext = GroupExtension::direct_product(&c2, &c2);
        assert_eq!(enumerate_sections(&ext, &budget()).unwrap().len(), 2);

        let s3 = build("S3").unwrap();
        let trivial = Arc::new(FiniteGroup::trivial());
        let ext = GroupExtension::direct_product(&s3, &trivial);
        assert_eq!(enumerate_sections(&ext, &budget()).unwrap().len(), 1);

        let a3 = s3.generate(&[s3.elements().find(|&x| s3.element_order(x) == 3).unwrap()]);
        let ext = GroupExtension::from_quotient(&s3, &a3).unwrap();
        assert_eq!(enumerate_sections(&ext, &budget()).unwrap().len(), 3);
    }

    #[test]
    fn complements_match_sections() {
        let s3 = build("S3").unwrap();
        let a3 = s3.generate(&[s3.elements().find(|&x| s3.element_order(x) == 3).unwrap()]);
        let ext = GroupExtension::from_quotient(&s3, &a3).unwrap();
        let comps = complements_of_kernel(&ext, &budget()).unwrap();
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|h| h.order() == 2));
        let mut images: Vec<Subgroup> = enumerate_sections(&ext, &budget())
            .unwrap()
            .iter()
            .map(Section::image)
            .collect();
        images.sort();
        assert_eq!(images, comps);
    }

    #[test]
    fn c4_over_c2_does_not_split() {
        let c4 = build("C4").unwrap();
        let ext = GroupExtension::from_quotient(&c4, &c4.generate(&[2])).unwrap();
        assert!(complements_of_kernel(&ext, &budget()).unwrap().is_empty());
        assert!(enumerate_sections(&ext, &budget()).unwrap().is_empty());
    }

    #[test]
    fn rejects_inexact_sequences() {
        let c2 = build("C2").unwrap();
        let c4 = build("C4").unwrap();
        let iota = Homomorphism::new(c2.clone(), c4.clone(), vec![0, 2]).unwrap();
        let pi = Homomorphism::trivial(&c4, &c2);
        assert!(matches!(
            GroupExtension::new(iota, pi),
            Err(Error::InvalidExtension(_))
        ));
    }

    #[test]
    fn galois_criterion_examples() {
        let (s3, c2) = (build("S3").unwrap(), build("C2").unwrap());
        let ext = GroupExtension::direct_product(&s3, &c2);
        let trivial_graph = ext.section(vec![0, 1]).unwrap();
        assert!(is_model_galois(&ext, &trivial_graph).unwrap());
        let (ext, s) = s3_x_c2_with_transposition();
        assert!(!is_model_galois(&ext, &s).unwrap());
    }

    #[test]
    fn descent_for_s3_canonical_section() {
        let ext = s3_as_semidirect();
        let s = ext.section(vec![0, 1]).unwrap();
        let r = minimal_descent(&ext, &s, &budget()).unwrap();
        assert!(r.v.is_trivial());
        assert!(r.e_subgroup.is_trivial());
        assert_eq!(r.galois_group_e.order(), 2);
        assert_eq!(r.aut_embedding.codomain().order(), 2);
        assert!(verify_normal_core_identity(&ext, &s).unwrap());
        let d = decompose_with(&ext, &r, &budget()).unwrap();
        assert!(d.quotient.is_isomorphic(&build("S3").unwrap()));
    }

    #[test]
    fn descent_for_galois_model() {
        let (g, q) = (build("S3").unwrap(), build("V4").unwrap());
        let ext = GroupExtension::direct_product(&g, &q);
        let s = ext.section(vec![0, 1, 2, 3]).unwrap();
        let r = minimal_descent(&ext, &s, &budget()).unwrap();
        assert_eq!(r.v, s.image());
        assert_eq!(r.e_subgroup.order(), 4);
        assert_eq!(r.galois_group_e.order(), 1);
        let d = decompose_with(&ext, &r, &budget()).unwrap();
        assert!(d.quotient.is_isomorphic(&g));
    }

    #[test]
    fn descent_for_transposition_graph() {
        let (ext, s) = s3_x_c2_with_transposition();
        let r = minimal_descent(&ext, &s, &budget()).unwrap();
        assert!(r.v.is_trivial());
        assert!(r.e_subgroup.is_trivial());
        assert_eq!(r.galois_group_e.order(), 2);
        assert!(verify_normal_core_identity(&ext, &s).unwrap());
        let d = decompose_with(&ext, &r, &budget()).unwrap();
        assert_eq!(d.quotient.order(), 12);
        assert!(d.quotient.is_isomorphic(ext.total_group()));
    }

    #[test]
    fn rejects_foreign_sections() {
        let ext = s3_as_semidirect();
        assert!(matches!(
            ext.section(vec![0, 2]),
            Err(Error::NotASection(_))
        ));
        let (other, s) = s3_x_c2_with_transposition();
        assert!(is_model_galois(&ext, &s).is_err());
        assert!(is_model_galois(&other, &s).is_ok());
    }

    #[test]
    fn nondescending_construction() {
        let s3 = build("S3").unwrap();
        let ext = GroupExtension::direct_product(&s3, &s3);
        let s = ext.section(s3.elements().collect()).unwrap();
        let eps = Homomorphism::identity(&s3);
        let s_prime = nondescending_model_construction(&ext, &eps, &s).unwrap();
        let n = s3.order();
        assert_eq!(
            s_prime.images(),
            s3.elements().map(|x| x * n + x).collect::<Vec<_>>()
        );
        assert!(!is_model_galois(&ext, &s_prime).unwrap());

        let c4 = build("C4").unwrap();
        let ext = GroupExtension::direct_product(&c4, &c4);
        let s = ext.section(c4.elements().collect()).unwrap();
        assert!(matches!(
            nondescending_model_construction(&ext, &Homomorphism::identity(&c4), &s),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn nondescending_from_larger_quotient() {
        let (s3, c2) = (build("S3").unwrap(), build("C2").unwrap());
        let q = Arc::new(s3.direct_product(&c2).with_label("S3xC2"));
        let ext = GroupExtension::direct_product(&s3, &q);
        let s = ext.section(q.elements().collect()).unwrap();
        let eps = Homomorphism::new(q.clone(), s3.clone(), q.elements().map(|x| x / 2).collect())
            .unwrap();
        let s_prime = nondescending_model_construction(&ext, &eps, &s).unwrap();
        assert!(!is_model_galois(&ext, &s_prime).unwrap());
    }
}
