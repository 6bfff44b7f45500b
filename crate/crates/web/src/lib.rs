//! Browser bindings for the demo page: catalog lookup, twist point-count
//! heatmaps, and a section-by-section descent explorer. Every entry point
//! returns a JSON string.

use descent_core::extensions::{is_model_galois, minimal_descent, sections_up_to, GroupExtension};
use descent_core::group::catalog::build;
use descent_core::group::{automorphism_group, enumerate_homs, GroupRef};
use descent_core::scenario::identify;
use descent_core::twisting::{twist_action, PointClass, TwistModel};
use descent_core::Budget;
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest `|G|·|Q|` the demo will compute with.
pub const MAX_DEMO_ORDER: usize = 96;
/// Rows and columns shown in a heatmap.
pub const MAX_HEATMAP_HOMS: usize = 64;
pub const MAX_EXPLORER_SECTIONS: usize = 200;

fn budget() -> Budget {
    Budget {
        max_total_order: MAX_DEMO_ORDER,
        max_hom_search: 2_000_000,
    }
}

fn group(name: &str) -> Result<GroupRef, String> {
    build(name.trim()).map_err(|e| e.to_string())
}

fn check_size(g: &GroupRef, q: &GroupRef) -> Result<(), String> {
    budget()
        .check_total_order(g.order() * q.order())
        .map_err(|e| e.to_string())
}

pub fn catalog_info(name: &str) -> Result<String, String> {
    let g = group(name)?;
    let aut = automorphism_group(&g, &budget()).map_err(|e| e.to_string())?;
    let info = json!({
        "label": g.label(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "center_order": g.center().order(),
        "aut_order": aut.group.order(),
        "isomorphic_to": identify(&g),
        "elements": g.element_names(),
        "element_orders": g.elements().map(|x| g.element_order(x)).collect::<Vec<_>>(),
    });
    Ok(info.to_string())
}

/// `counts[i][j]` = rational points on the fiber over `φ_j` of the twist by `α_i`.
pub fn twist_heatmap(g_name: &str, q_name: &str) -> Result<String, String> {
    let (g, q) = (group(g_name)?, group(q_name)?);
    check_size(&g, &q)?;
    let homs = enumerate_homs(&q, &g, &budget()).map_err(|e| e.to_string())?;
    if homs.len() > MAX_HEATMAP_HOMS {
        return Err(format!(
            "Hom({}, {}) has {} elements; the heatmap shows at most {MAX_HEATMAP_HOMS}",
            q.label(),
            g.label(),
            homs.len()
        ));
    }
    let points: Vec<PointClass> = homs.iter().cloned().map(PointClass::new).collect();
    let mut counts = Vec::with_capacity(homs.len());
    let mut galois = Vec::with_capacity(homs.len());
    let center = g.center();
    for alpha in &homs {
        let action = twist_action(&TwistModel::new(alpha.clone())).map_err(|e| e.to_string())?;
        counts.push(
            points
                .iter()
                .map(|p| action.fixed_points(p.phi()).len())
                .collect::<Vec<_>>(),
        );
        galois.push(alpha.images().iter().all(|&x| center.contains(x)));
    }
    let labels: Vec<String> = homs
        .iter()
        .map(|h| {
            let names: Vec<&str> = h.images().iter().map(|&x| g.element_name(x)).collect();
            names.join(",")
        })
        .collect();
    Ok(json!({
        "G": g.label(),
        "Q": q.label(),
        "labels": labels,
        "canonical": points.iter().map(|p| p.canonical()).collect::<Vec<_>>(),
        "galois": galois,
        "counts": counts,
    })
    .to_string())
}

/// Number of actions `Q → Aut(G)` available to [`descent_explorer`].
pub fn action_count(g_name: &str, q_name: &str) -> Result<usize, String> {
    let (g, q) = (group(g_name)?, group(q_name)?);
    check_size(&g, &q)?;
    let aut = automorphism_group(&g, &budget()).map_err(|e| e.to_string())?;
    Ok(aut
        .all_actions(&q, &budget())
        .map_err(|e| e.to_string())?
        .len())
}

/// Every section of `G ⋊ Q` for the chosen action, with `V`, `E` and `Gal(E/K)`.
pub fn descent_explorer(g_name: &str, q_name: &str, action_index: usize) -> Result<String, String> {
    let (g, q) = (group(g_name)?, group(q_name)?);
    check_size(&g, &q)?;
    let b = budget();
    let aut = automorphism_group(&g, &b).map_err(|e| e.to_string())?;
    let actions = aut.all_actions(&q, &b).map_err(|e| e.to_string())?;
    let theta = actions.get(action_index).ok_or_else(|| {
        format!(
            "action index {action_index} out of range (0..{})",
            actions.len()
        )
    })?;
    let ext = GroupExtension::semidirect(&g, &q, theta).map_err(|e| e.to_string())?;
    let sections =
        sections_up_to(&ext, &b, MAX_EXPLORER_SECTIONS + 1).map_err(|e| e.to_string())?;
    let truncated = sections.len() > MAX_EXPLORER_SECTIONS;
    let total = ext.total_group();
    let mut rows = Vec::new();
    for s in sections.iter().take(MAX_EXPLORER_SECTIONS) {
        let r = minimal_descent(&ext, s, &b).map_err(|e| e.to_string())?;
        let names = |xs: &[usize]| {
            xs.iter()
                .map(|&x| total.element_name(x).to_string())
                .collect::<Vec<_>>()
        };
        rows.push(json!({
            "section": names(s.images()),
            "galois": is_model_galois(&ext, s).map_err(|e| e.to_string())?,
            "V": names(r.v.elements()),
            "E": r.e_subgroup.elements().iter().map(|&x| q.element_name(x)).collect::<Vec<_>>(),
            "galois_group_order": r.galois_group_e.order(),
            "galois_group": identify(&r.galois_group_e),
        }));
    }
    Ok(json!({
        "total": { "label": total.label(), "order": total.order(), "isomorphic_to": identify(total) },
        "action": theta.permutations(),
        "trivial_action": theta.is_trivial(),
        "truncated": truncated,
        "sections": rows,
    })
    .to_string())
}

fn js<T>(r: Result<T, String>) -> Result<T, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = catalogInfo)]
pub fn catalog_info_js(name: &str) -> Result<String, JsValue> {
    js(catalog_info(name))
}

#[wasm_bindgen(js_name = twistHeatmap)]
pub fn twist_heatmap_js(g: &str, q: &str) -> Result<String, JsValue> {
    js(twist_heatmap(g, q))
}

#[wasm_bindgen(js_name = actionCount)]
pub fn action_count_js(g: &str, q: &str) -> Result<usize, JsValue> {
    js(action_count(g, q))
}

#[wasm_bindgen(js_name = descentExplorer)]
pub fn descent_explorer_js(g: &str, q: &str, action_index: usize) -> Result<String, JsValue> {
    js(descent_explorer(g, q, action_index))
}
