use crate::data::{is_admissible, CompositeType, DataSet, Relationship};
use crate::scene::{chart_layout, ViewSpec};

use super::{require_admissible, table, ComposeError, CompositeSpec, Link, Payload};

/// One link per item correspondence between two views, restricted to items
/// both views show. Endpoints are the items' world anchors.
pub fn integrated_links(
    a: &ViewSpec,
    b: &ViewSpec,
    rel: &Relationship,
    data: &DataSet,
) -> Result<Vec<Link>, ComposeError> {
    require_admissible(CompositeType::Integrated, rel)?;
    let (ta, tb) = (table(data, &a.table)?, table(data, &b.table)?);
    let (la, lb) = (chart_layout(a, ta)?, chart_layout(b, tb)?);
    let pairs = rel.pairs_between(ta, tb)?;
    Ok(pairs
        .into_iter()
        .filter_map(|(ia, ib)| {
            let ma = la.marks.get(&ia)?;
            let mb = lb.marks.get(&ib)?;
            let pa = a.pose.transform_point(&ma.anchor);
            let pb = b.pose.transform_point(&mb.anchor);
            Some(Link {
                a_view: a.id.clone(),
                b_view: b.id.clone(),
                a_item: ia,
                b_item: ib,
                endpoints: [[pa.x, pa.y, pa.z], [pb.x, pb.y, pb.z]],
            })
        })
        .collect())
}

pub fn compose_integrated(
    id: &str,
    a: &ViewSpec,
    b: &ViewSpec,
    rel: &Relationship,
    data: &DataSet,
) -> Result<CompositeSpec, ComposeError> {
    let (a, b) = if a.id <= b.id { (a, b) } else { (b, a) };
    let links = integrated_links(a, b, rel, data)?;
    Ok(CompositeSpec {
        id: id.into(),
        ty: CompositeType::Integrated,
        constituents: vec![a.clone(), b.clone()],
        payload: Payload::Links(links),
        transforms: vec![],
    })
}

/// Integrated composite over any number of views: links every pair whose
/// relationship admits integration. At least one pair must.
pub fn compose_integrated_group(
    id: &str,
    views: &[ViewSpec],
    data: &DataSet,
) -> Result<CompositeSpec, ComposeError> {
    let mut sorted: Vec<&ViewSpec> = views.iter().collect();
    sorted.sort_by(|x, y| x.id.cmp(&y.id));
    let mut links = Vec::new();
    let mut linked = false;
    let mut first_rejection = None;
    for (i, a) in sorted.iter().enumerate() {
        for b in &sorted[i + 1..] {
            let rel = data
                .relationship(&a.table, &b.table)
                .ok_or_else(|| ComposeError::UnknownTable(format!("{}/{}", a.table, b.table)))?;
            if is_admissible(rel.kind, CompositeType::Integrated) {
                links.extend(integrated_links(a, b, rel, data)?);
                linked = true;
            } else if first_rejection.is_none() {
                first_rejection = Some(rel.kind);
            }
        }
    }
    if !linked {
        return Err(ComposeError::NotAdmissible {
            ty: CompositeType::Integrated,
            kind: first_rejection.unwrap_or(crate::data::RelationshipKind::None),
        });
    }
    Ok(CompositeSpec {
        id: id.into(),
        ty: CompositeType::Integrated,
        constituents: sorted.into_iter().cloned().collect(),
        payload: Payload::Links(links),
        transforms: vec![],
    })
}

/// Drops one view from an integrated group. Returns the rebuilt composite
/// when at least two linked views remain.
pub fn remove_from_group(
    composite: &CompositeSpec,
    view: &str,
    current: &[ViewSpec],
    data: &DataSet,
) -> Result<Option<CompositeSpec>, ComposeError> {
    if !composite.has_constituent(view) {
        return Err(ComposeError::NotAConstituent(view.into()));
    }
    let rest: Vec<ViewSpec> = composite
        .constituents
        .iter()
        .filter(|v| v.id != view)
        .map(|v| current.iter().find(|c| c.id == v.id).unwrap_or(v).clone())
        .collect();
    if rest.len() < 2 {
        return Ok(None);
    }
    match compose_integrated_group(&composite.id, &rest, data) {
        Ok(c) => Ok(Some(c)),
        Err(ComposeError::NotAdmissible { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}
