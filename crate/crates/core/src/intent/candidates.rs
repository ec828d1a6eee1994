use serde::Serialize;

use crate::compose::region_obb;
use crate::data::{is_admissible, CompositeType, RelationshipKind};
use crate::scene::{body_obb, collide, vertical_offset, ChartKind};

use super::hysteresis::pair_key;
use super::Session;

/// A composition the current scene suggests.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CandidateIntent {
    #[serde(rename = "type")]
    pub ty: CompositeType,
    /// Host first for hierarchical types, otherwise by id.
    pub constituents: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub host: Option<String>,
    /// Host element for nesting, region index for overloading.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
    pub rank: usize,
    pub admissible: bool,
}

impl CandidateIntent {
    pub fn involves(&self, view: &str) -> bool {
        self.constituents.iter().any(|c| c == view)
    }
}

/// Ranked admissible candidates for the session's current relations.
///
/// Rules, most specific first: nested (client embedded in a host element,
/// large scale ratio), overloaded (scatterplot touching an active pcp
/// region), superimposed (bodies collide at a steep angle, client on top),
/// integrated (latched proximity, related data), juxtaposed (near, and
/// either unrelated or not integrable).
pub fn candidates(session: &Session) -> Vec<CandidateIntent> {
    let th = session.thresholds();
    let mut out = Vec::new();
    for pair in &session.relations().pairs {
        let (Some(va), Some(vb)) = (session.view(&pair.a), session.view(&pair.b)) else {
            continue;
        };
        let ca = session.composite_of(&va.id);
        let cb = session.composite_of(&vb.id);
        if let (Some(x), Some(y)) = (ca, cb) {
            if x.id == y.id {
                continue;
            }
        }
        let locked = [ca, cb]
            .iter()
            .flatten()
            .any(|c| c.ty != CompositeType::Integrated);
        if locked {
            continue;
        }
        let grouped = ca.is_some() || cb.is_some();
        let Some(rel) = session.data().relationship(&va.table, &vb.table) else {
            continue;
        };
        let (host, client) = if va.diagonal() >= vb.diagonal() {
            (va, vb)
        } else {
            (vb, va)
        };
        let mut push = |ty: CompositeType, host: Option<&str>, context: Option<String>| {
            if !is_admissible(rel.kind, ty) {
                return;
            }
            let constituents = match host {
                Some(h) => vec![
                    h.to_owned(),
                    if h == va.id { vb.id.clone() } else { va.id.clone() },
                ],
                None => vec![va.id.clone(), vb.id.clone()],
            };
            out.push(CandidateIntent {
                ty,
                constituents,
                host: host.map(str::to_owned),
                context,
                rank: 0,
                admissible: true,
            });
        };

        if !grouped {
            if pair.colliding && pair.scale_ratio >= th.host_client_ratio {
                if let Some(e) = pair
                    .embedded_in
                    .iter()
                    .find(|e| e.client == client.id && e.host == host.id)
                {
                    push(CompositeType::Nested, Some(&host.id), Some(e.element.clone()));
                }
            }
            for (pcp, other) in [(va, vb), (vb, va)] {
                if pcp.chart != ChartKind::Pcp || other.chart != ChartKind::Scatterplot {
                    continue;
                }
                for region in session.regions_of(&pcp.id) {
                    if collide(&region_obb(pcp, region), &body_obb(other)) {
                        push(
                            CompositeType::Overloaded,
                            Some(&pcp.id),
                            Some(region.index.to_string()),
                        );
                    }
                }
            }
            if pair.colliding
                && pair.orientation_angle >= th.superimpose_angle_deg
                && vertical_offset(host, client) > 0.0
                && matches!(host.chart, ChartKind::Map | ChartKind::Graph)
            {
                push(CompositeType::Superimposed, Some(&host.id), None);
            }
        }
        let latched = session.latched().contains(&pair_key(&va.id, &vb.id));
        if !pair.colliding && latched && rel.kind != RelationshipKind::None {
            push(CompositeType::Integrated, None, None);
        }
        if !grouped
            && !pair.colliding
            && pair.gap < th.juxtapose_distance
            && (rel.kind == RelationshipKind::None
                || !is_admissible(rel.kind, CompositeType::Integrated))
        {
            push(CompositeType::Juxtaposed, None, None);
        }
    }
    out.sort_by(|x, y| {
        (x.ty.precedence(), &x.constituents, &x.context).cmp(&(
            y.ty.precedence(),
            &y.constituents,
            &y.context,
        ))
    });
    for (i, c) in out.iter_mut().enumerate() {
        c.rank = i;
    }
    out
}
