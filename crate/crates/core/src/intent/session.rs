use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use nalgebra::{UnitQuaternion, Vector3};
use serde::Serialize;
use thiserror::Error;

use crate::compose::{
    compose_integrated_group, compose_juxtaposed, compose_nested, compose_overloaded,
    compose_superimposed, decompose, default_axis_gap, expand_axis, extract_element,
    partition_grid, remove_from_group, spread_pcp_axes, ComposeError, CompositeSpec,
    DecomposeTrigger, LayoutMode, Payload, SpreadRegion, PANEL_GAP,
};
use crate::data::{CompositeType, DataSet};
use crate::scene::{
    anchor_position, gap_distance, has_part, induced_relations, obb_of, part_box, pcp_axis_x,
    Axis, InducedRelations, Obb, Part, Pose, PositionSnapshot, ViewSpec,
};

use super::candidates::{candidates, CandidateIntent};
use super::hysteresis::{hysteresis_gate, pair_key, PairKey};
use super::{EventKind, Hand, InteractionEvent, Target, Thresholds};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvalidEvent {
    #[error("event time {t} is earlier than the previous event at {last}")]
    TimeRegression { t: f64, last: f64 },
    #[error("the {0:?} hand already holds something")]
    HandBusy(Hand),
    #[error("the {0:?} hand holds nothing")]
    HandEmpty(Hand),
    #[error("unknown view {0}")]
    UnknownView(String),
    #[error("view {view} has no part {part}")]
    UnknownPart { view: String, part: String },
}

/// What a release changed about the set of composites.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Command {
    Compose {
        composite: CompositeSpec,
        /// Composites this one supersedes (merged groups, re-partitions).
        replaces: Vec<String>,
    },
    Decompose {
        composite: String,
        trigger: DecomposeTrigger,
        views: Vec<ViewSpec>,
        /// What is left of an integrated group after one view leaves it.
        #[serde(skip_serializing_if = "Option::is_none")]
        remaining: Option<CompositeSpec>,
    },
}

/// A hand holding part of a view.
#[derive(Debug, Clone, PartialEq)]
pub struct Grip {
    pub target: Target,
    pub hand_start: Pose,
    pub hand: Pose,
    pub view_start: Pose,
    /// Pcp axis offset when the grab began.
    axis_offset_start: f64,
}

#[derive(Debug, Clone, PartialEq)]
struct TwoHanded {
    view: String,
    left: Vector3<f64>,
    right: Vector3<f64>,
    view_start: Pose,
}

/// Serializable view of the session for clients.
#[derive(Debug, Clone, Serialize)]
pub struct SessionSnapshot<'a> {
    pub t: f64,
    pub views: Vec<&'a ViewSpec>,
    pub composites: &'a [CompositeSpec],
    pub relations: &'a InducedRelations,
    pub latched: Vec<&'a PairKey>,
    pub regions: Vec<&'a SpreadRegion>,
}

/// Event-sourced composition session.
///
/// The state is a pure function of the initial scene and the applied event
/// prefix: [`Session::step`] never mutates its receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    data: Arc<DataSet>,
    thresholds: Thresholds,
    views: BTreeMap<String, ViewSpec>,
    composites: Vec<CompositeSpec>,
    hands: BTreeMap<Hand, Grip>,
    two_handed: Option<TwoHanded>,
    /// Handle drags of a two-handed expansion, per view.
    expansions: BTreeMap<String, [Option<f64>; 2]>,
    /// Accumulated unimanual handle drag per view axis, meters.
    partition_drag: BTreeMap<(String, Axis), f64>,
    axis_offsets: BTreeMap<(String, usize), f64>,
    regions: BTreeMap<(String, usize), SpreadRegion>,
    /// Scatterplots spawned by region activation.
    spawned: BTreeSet<String>,
    /// View pose at the start of its latest body grab.
    origins: BTreeMap<String, Pose>,
    relations: InducedRelations,
    latched: BTreeSet<PairKey>,
    /// Candidates the latest release evaluated, before it committed.
    considered: Vec<CandidateIntent>,
    previous: Option<PositionSnapshot>,
    t: Option<f64>,
    applied: usize,
    next_id: usize,
}

impl Session {
    pub fn new(data: DataSet, views: Vec<ViewSpec>, thresholds: Thresholds) -> Self {
        let mut s = Self {
            data: Arc::new(data),
            thresholds,
            views: views.into_iter().map(|v| (v.id.clone(), v)).collect(),
            composites: Vec::new(),
            hands: BTreeMap::new(),
            two_handed: None,
            expansions: BTreeMap::new(),
            partition_drag: BTreeMap::new(),
            axis_offsets: BTreeMap::new(),
            regions: BTreeMap::new(),
            spawned: BTreeSet::new(),
            origins: BTreeMap::new(),
            relations: InducedRelations::default(),
            latched: BTreeSet::new(),
            considered: Vec::new(),
            previous: None,
            t: None,
            applied: 0,
            next_id: 1,
        };
        s.refresh(0.0, false);
        s
    }

    pub fn data(&self) -> &DataSet {
        &self.data
    }

    pub fn thresholds(&self) -> &Thresholds {
        &self.thresholds
    }

    pub fn view(&self, id: &str) -> Option<&ViewSpec> {
        self.views.get(id)
    }

    pub fn views(&self) -> impl Iterator<Item = &ViewSpec> {
        self.views.values()
    }

    pub fn composites(&self) -> &[CompositeSpec] {
        &self.composites
    }

    pub fn relations(&self) -> &InducedRelations {
        &self.relations
    }

    pub fn latched(&self) -> &BTreeSet<PairKey> {
        &self.latched
    }

    pub fn grip(&self, hand: Hand) -> Option<&Grip> {
        self.hands.get(&hand)
    }

    /// Number of events applied so far.
    pub fn applied(&self) -> usize {
        self.applied
    }

    pub fn regions_of<'a>(&'a self, pcp: &'a str) -> impl Iterator<Item = &'a SpreadRegion> + 'a {
        self.regions.values().filter(move |r| r.pcp == pcp)
    }

    /// The composite a view belongs to, if any.
    pub fn composite_of(&self, view: &str) -> Option<&CompositeSpec> {
        self.composites.iter().find(|c| c.has_constituent(view))
    }

    pub fn axis_offset(&self, view: &str, axis: usize) -> f64 {
        self.axis_offsets
            .get(&(view.to_owned(), axis))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn candidates(&self) -> Vec<CandidateIntent> {
        candidates(self)
    }

    /// Candidates as they stood when the most recent release was evaluated.
    pub fn considered(&self) -> &[CandidateIntent] {
        &self.considered
    }

    pub fn snapshot(&self) -> SessionSnapshot<'_> {
        SessionSnapshot {
            t: self.t.unwrap_or(0.0),
            views: self.views.values().collect(),
            composites: &self.composites,
            relations: &self.relations,
            latched: self.latched.iter().collect(),
            regions: self.regions.values().collect(),
        }
    }

    /// Applies one event to a copy of the session.
    pub fn step(&self, event: &InteractionEvent) -> Result<(Session, Option<Command>), InvalidEvent> {
        let mut next = self.clone();
        let cmd = next.apply(event)?;
        Ok((next, cmd))
    }

    /// Applies one event in place. On error the session is unchanged.
    pub fn apply(&mut self, event: &InteractionEvent) -> Result<Option<Command>, InvalidEvent> {
        if let Some(last) = self.t {
            if event.t < last {
                return Err(InvalidEvent::TimeRegression { t: event.t, last });
            }
        }
        let cmd = match &event.kind {
            EventKind::Grab { hand, target } => {
                self.grab(*hand, target)?;
                None
            }
            EventKind::Move { hand, pose } => {
                self.move_hand(*hand, *pose)?;
                None
            }
            EventKind::Release { hand } => self.release(*hand, event.t)?,
            EventKind::Tick => {
                self.refresh(event.t, true);
                None
            }
        };
        self.t = Some(event.t);
        self.applied += 1;
        Ok(cmd)
    }

    fn refresh(&mut self, t: f64, remember: bool) {
        let views: Vec<ViewSpec> = self.views.values().cloned().collect();
        self.relations = induced_relations(&views, &self.data, self.previous.as_ref(), t);
        let mut latched: BTreeSet<PairKey> = self
            .latched
            .iter()
            .filter(|(a, b)| self.views.contains_key(a) && self.views.contains_key(b))
            .cloned()
            .collect();
        for p in &self.relations.pairs {
            latched = hysteresis_gate(&pair_key(&p.a, &p.b), p.gap, &latched, &self.thresholds);
        }
        self.latched = latched;
        if remember {
            self.previous = Some(PositionSnapshot::of(t, &views));
        }
    }

    fn grab_point(&self, view: &ViewSpec, part: &Part, hand: Hand) -> Vector3<f64> {
        let hx = view.half_extents[0];
        match part {
            Part::Body => {
                let side = if hand == Hand::Left { -hx } else { hx };
                view.pose.transform_point(&Vector3::new(side, 0.0, 0.0))
            }
            Part::PcpAxis(i) => view.pose.transform_point(&Vector3::new(
                pcp_axis_x(view, *i) + self.axis_offset(&view.id, *i),
                0.0,
                0.0,
            )),
            Part::Element(item) => {
                if let Some(p) = self.placed_element(&view.id, item) {
                    return p.position;
                }
                self.data
                    .table(&view.table)
                    .and_then(|t| anchor_position(view, t, item).ok())
                    .unwrap_or(view.pose.position)
            }
            _ => self
                .data
                .table(&view.table)
                .and_then(|t| part_box(view, t, part).ok())
                .map(|(c, _)| view.pose.transform_point(&c))
                .unwrap_or(view.pose.position),
        }
    }

    /// Where a composite currently shows an element of `view`: a superimposed
    /// glyph on its anchor or a nested chart in its host element.
    fn placed_element(&self, view: &str, item: &str) -> Option<Pose> {
        self.composites.iter().find_map(|c| match &c.payload {
            Payload::Anchors(a) if a.client == view => {
                a.entries.iter().find(|e| e.item == item).map(|e| e.target)
            }
            Payload::Nests(n) if n.host == view => {
                n.entries.iter().find(|e| e.element == item).map(|e| e.target)
            }
            _ => None,
        })
    }

    fn grab(&mut self, hand: Hand, target: &Target) -> Result<(), InvalidEvent> {
        if self.hands.contains_key(&hand) {
            return Err(InvalidEvent::HandBusy(hand));
        }
        let view = self
            .views
            .get(&target.view)
            .ok_or_else(|| InvalidEvent::UnknownView(target.view.clone()))?;
        let exists = self
            .data
            .table(&view.table)
            .is_some_and(|t| has_part(view, t, &target.part));
        if !exists {
            return Err(InvalidEvent::UnknownPart {
                view: target.view.clone(),
                part: target.part.to_string(),
            });
        }
        let point = self.grab_point(view, &target.part, hand);
        let hand_pose = Pose {
            position: point,
            rotation: view.pose.rotation,
            scale: 1.0,
        };
        let axis_offset_start = match target.part {
            Part::PcpAxis(i) => self.axis_offset(&target.view, i),
            _ => 0.0,
        };
        let view_pose = view.pose;
        self.hands.insert(
            hand,
            Grip {
                target: target.clone(),
                hand_start: hand_pose,
                hand: hand_pose,
                view_start: view_pose,
                axis_offset_start,
            },
        );

        let other = self.hands.get(&hand.other()).cloned();
        match &target.part {
            Part::Body => {
                self.origins.insert(target.view.clone(), view_pose);
                if let Some(o) = other.filter(|o| o.target.view == target.view && o.target.part == Part::Body) {
                    let (left, right) = match hand {
                        Hand::Left => (point, o.hand.position),
                        Hand::Right => (o.hand.position, point),
                    };
                    self.two_handed = Some(TwoHanded {
                        view: target.view.clone(),
                        left,
                        right,
                        view_start: view_pose,
                    });
                }
            }
            Part::AxisHandleX | Part::AxisHandleY => {
                let axis = target.part.handle_axis().expect("handle");
                let partner = Part::handle(if axis == Axis::X { Axis::Y } else { Axis::X });
                if other.is_some_and(|o| o.target.view == target.view && o.target.part == partner) {
                    self.expansions.insert(target.view.clone(), [None, None]);
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn move_hand(&mut self, hand: Hand, pose: Pose) -> Result<(), InvalidEvent> {
        let grip = self.hands.get_mut(&hand).ok_or(InvalidEvent::HandEmpty(hand))?;
        grip.hand = pose;
        let grip = grip.clone();
        let view_id = grip.target.view.clone();
        match grip.target.part {
            Part::Body => {
                let new_pose = match &self.two_handed {
                    Some(th) if th.view == view_id => {
                        let left = self.hands[&Hand::Left].hand.position;
                        let right = self.hands[&Hand::Right].hand.position;
                        two_handed_pose(th, left, right)
                    }
                    _ => follow(&grip),
                };
                if let Some(v) = self.views.get_mut(&view_id) {
                    v.pose = new_pose;
                }
            }
            Part::PcpAxis(i) => {
                if let Some(v) = self.views.get(&view_id) {
                    let x_dir = v.pose.rotation * Vector3::x();
                    let along = (pose.position - grip.hand_start.position).dot(&x_dir);
                    let offset = grip.axis_offset_start + along / v.pose.scale;
                    self.axis_offsets.insert((view_id, i), offset);
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn release(&mut self, hand: Hand, t: f64) -> Result<Option<Command>, InvalidEvent> {
        let grip = self.hands.remove(&hand).ok_or(InvalidEvent::HandEmpty(hand))?;
        if self.two_handed.as_ref().is_some_and(|th| th.view == grip.target.view)
            && grip.target.part == Part::Body
        {
            self.two_handed = None;
            // The remaining hand carries on from here.
            if let Some(o) = self.hands.get_mut(&hand.other()) {
                o.hand_start = o.hand;
                if let Some(v) = self.views.get(&o.target.view) {
                    o.view_start = v.pose;
                }
            }
        }
        self.refresh(t, false);
        self.considered = self.candidates();
        let view = grip.target.view.clone();
        if !self.views.contains_key(&view) {
            return Ok(None);
        }
        let cmd = match grip.target.part.clone() {
            Part::Body => {
                let still_held = self
                    .hands
                    .values()
                    .any(|g| g.target.view == view && g.target.part == Part::Body);
                if still_held {
                    None
                } else {
                    self.release_body(&view)
                }
            }
            Part::AxisHandleX => self.release_handle(&view, Axis::X, &grip),
            Part::AxisHandleY => self.release_handle(&view, Axis::Y, &grip),
            Part::PcpAxis(i) => self.release_pcp_axis(&view, i),
            Part::Element(item) => self.release_element(&view, &item, &grip, t),
            Part::AxisX | Part::AxisY => None,
        };
        if let Some(c) = &cmd {
            self.apply_command(c);
        }
        Ok(cmd)
    }

    fn current(&self, ids: &[&str]) -> Vec<ViewSpec> {
        ids.iter().filter_map(|id| self.views.get(*id).cloned()).collect()
    }

    fn new_id(&self) -> String {
        format!("c{}", self.next_id)
    }

    fn decompose_command(
        &self,
        composite: &CompositeSpec,
        trigger: DecomposeTrigger,
    ) -> Option<Command> {
        let current = self.current(&composite.constituent_ids());
        let views = decompose(composite, trigger, &current).ok()?;
        Some(Command::Decompose {
            composite: composite.id.clone(),
            trigger,
            views,
            remaining: None,
        })
    }

    fn release_body(&mut self, view: &str) -> Option<Command> {
        if let Some(c) = self.composite_of(view).cloned() {
            let v = &self.views[view];
            let others: Vec<&ViewSpec> = c
                .constituents
                .iter()
                .filter(|o| o.id != view)
                .filter_map(|o| self.views.get(&o.id))
                .collect();
            let far = |limit: f64| others.iter().all(|o| gap_distance(v, o) > limit);
            match (&c.ty, &c.payload) {
                (CompositeType::Integrated, _) if far(self.thresholds.break_distance()) => {
                    let current = self.current(&c.constituent_ids());
                    let remaining = remove_from_group(&c, view, &current, &self.data).ok()?;
                    return match remaining {
                        None => self.decompose_command(&c, DecomposeTrigger::Separated),
                        Some(rest) => Some(Command::Decompose {
                            composite: c.id.clone(),
                            trigger: DecomposeTrigger::Separated,
                            views: vec![v.clone()],
                            remaining: Some(rest),
                        }),
                    };
                }
                (CompositeType::Juxtaposed, Payload::Layout(l))
                    if l.mode == LayoutMode::Arrangement
                        && far(self.thresholds.juxtapose_distance * self.thresholds.hysteresis) =>
                {
                    return self.decompose_command(&c, DecomposeTrigger::Separated);
                }
                (CompositeType::Nested, Payload::Nests(n)) if n.client == view => {
                    let host = self.views.get(&n.host)?;
                    let seed = &n.entries.first()?.element;
                    let obb = obb_of(host, self.data.table(&host.table)?, &Part::Element(seed.clone())).ok()?;
                    if !obb.contains(&v.pose.position, 1e-9) {
                        return self.decompose_command(&c, DecomposeTrigger::DraggedOut);
                    }
                    return None;
                }
                _ => {}
            }
        }
        self.commit_best(view)
    }

    /// Commits the best-ranked candidate involving `view` that composes.
    fn commit_best(&self, view: &str) -> Option<Command> {
        self.candidates()
            .into_iter()
            .filter(|c| c.involves(view))
            .find_map(|c| self.compose_candidate(&c).ok())
    }

    fn origin(&self, view: &ViewSpec) -> Pose {
        self.origins.get(&view.id).copied().unwrap_or(view.pose)
    }

    fn compose_candidate(&self, cand: &CandidateIntent) -> Result<Command, ComposeError> {
        let id = self.new_id();
        let view = |i: usize| -> Result<&ViewSpec, ComposeError> {
            self.views
                .get(&cand.constituents[i])
                .ok_or_else(|| ComposeError::NotAConstituent(cand.constituents[i].clone()))
        };
        let (a, b) = (view(0)?, view(1)?);
        let rel = self
            .data
            .relationship(&a.table, &b.table)
            .ok_or_else(|| ComposeError::UnknownTable(a.table.clone()))?;
        let mut replaces = Vec::new();
        let mut composite = match cand.ty {
            CompositeType::Integrated => {
                let mut members: BTreeSet<String> = BTreeSet::new();
                for v in [a, b] {
                    match self.composite_of(&v.id) {
                        Some(c) => {
                            replaces.push(c.id.clone());
                            members.extend(c.constituents.iter().map(|x| x.id.clone()));
                        }
                        None => {
                            members.insert(v.id.clone());
                        }
                    }
                }
                let ids: Vec<&str> = members.iter().map(String::as_str).collect();
                compose_integrated_group(&id, &self.current(&ids), &self.data)?
            }
            CompositeType::Juxtaposed => compose_juxtaposed(&id, a, b, rel, &self.data)?,
            CompositeType::Superimposed => {
                let mut c = compose_superimposed(&id, a, b, rel, &self.data)?;
                c.record_origin(&b.id, self.origin(b));
                c
            }
            CompositeType::Overloaded => {
                let index: usize = cand
                    .context
                    .as_deref()
                    .and_then(|s| s.parse().ok())
                    .unwrap_or(0);
                let region = self.regions.get(&(a.id.clone(), index));
                let mut c = compose_overloaded(&id, a, b, region, rel, &self.data)?;
                c.record_origin(&b.id, self.origin(b));
                c
            }
            CompositeType::Nested => {
                let seed = cand.context.clone().unwrap_or_default();
                let mut c = compose_nested(&id, a, b, rel, &self.data, &seed)?;
                c.record_origin(&b.id, self.origin(b));
                c
            }
        };
        replaces.dedup();
        composite.constituents.sort_by(|x, y| x.id.cmp(&y.id));
        if let Some(pos) = composite
            .constituents
            .iter()
            .position(|v| Some(&v.id) == cand.host.as_ref())
        {
            let host = composite.constituents.remove(pos);
            composite.constituents.insert(0, host);
        }
        for v in composite.constituents.iter_mut() {
            if let Some(t) = composite.transforms.iter().find(|t| t.element == v.id) {
                v.pose = t.start;
            }
        }
        Ok(Command::Compose {
            composite,
            replaces,
        })
    }

    fn release_handle(&mut self, view_id: &str, axis: Axis, grip: &Grip) -> Option<Command> {
        let view = self.views.get(view_id)?.clone();
        let dir = view.pose.rotation * axis_unit(axis);
        let drag = (grip.hand.position - grip.hand_start.position).dot(&dir);
        let existing = self
            .composite_of(view_id)
            .filter(|c| c.ty == CompositeType::Juxtaposed)
            .cloned();
        if self.composite_of(view_id).is_some() && existing.is_none() {
            return None;
        }

        if let Some(mut drags) = self.expansions.get(view_id).copied() {
            drags[axis.index()] = Some(drag);
            self.expansions.insert(view_id.to_owned(), drags);
            let partner_held = self.hands.values().any(|g| {
                g.target.view == view_id && g.target.part.handle_axis().is_some()
            });
            if partner_held {
                return None;
            }
            self.expansions.remove(view_id);
            let spec = expand_axis(&self.new_id(), &view, &self.data, drags).ok()??;
            return Some(Command::Compose {
                composite: spec,
                replaces: existing.map(|c| vec![c.id]).unwrap_or_default(),
            });
        }

        let key = (view_id.to_owned(), axis);
        let total = (self.partition_drag.get(&key).copied().unwrap_or(0.0) + drag).max(0.0);
        self.partition_drag.insert(key, total);
        let mut bins = [1usize; 2];
        for ax in [Axis::X, Axis::Y] {
            let acc = self
                .partition_drag
                .get(&(view_id.to_owned(), ax))
                .copied()
                .unwrap_or(0.0);
            let step = self.thresholds.bin_step_fraction * view.axis_length(ax) * view.pose.scale;
            if view.axis_column(ax).is_some() {
                bins[ax.index()] = 1 + (acc / step).floor() as usize;
            }
        }
        let current_bins = existing.as_ref().and_then(|c| match &c.payload {
            Payload::Layout(l) if l.mode == LayoutMode::Partition => Some(l.bins),
            _ => None,
        });
        if bins == [1, 1] {
            return existing
                .filter(|_| current_bins.is_some())
                .and_then(|c| self.decompose_command(&c, DecomposeTrigger::PartitionCollapsed));
        }
        if current_bins == Some(bins) {
            return None;
        }
        let source = existing
            .as_ref()
            .and_then(|c| c.constituents.first().cloned())
            .unwrap_or(view);
        let spec = partition_grid(
            &self.new_id(),
            &source,
            &self.data,
            bins,
            PANEL_GAP,
            self.thresholds.curvature,
        )
        .ok()??;
        Some(Command::Compose {
            composite: spec,
            replaces: existing.map(|c| vec![c.id]).unwrap_or_default(),
        })
    }

    fn release_pcp_axis(&mut self, view_id: &str, i: usize) -> Option<Command> {
        let pcp = self.views.get(view_id)?.clone();
        let n = pcp.encodings.axes.len();
        let g = default_axis_gap(&pcp);
        let pairs: Vec<usize> = [i.checked_sub(1), Some(i)]
            .into_iter()
            .flatten()
            .filter(|j| j + 1 < n)
            .collect();
        for j in pairs {
            let gap = g + self.axis_offset(view_id, j + 1) - self.axis_offset(view_id, j);
            let key = (view_id.to_owned(), j);
            let overload = self.composites.iter().find(|c| match &c.payload {
                Payload::Overload(o) => o.pcp == view_id && o.axis_pair[0] == j,
                _ => false,
            });
            if let Some(c) = overload {
                if gap <= g + 1e-9 {
                    return self.decompose_command(&c.clone(), DecomposeTrigger::AxesClosed);
                }
                continue;
            }
            if self.regions.contains_key(&key) {
                if gap <= self.thresholds.spread_factor * g {
                    let region = self.regions.remove(&key).expect("present");
                    let scatter = format!("{}.sppc{}", region.pcp, region.index);
                    let held = self.hands.values().any(|h| h.target.view == scatter);
                    if self.spawned.contains(&scatter)
                        && !held
                        && self.composite_of(&scatter).is_none()
                    {
                        self.views.remove(&scatter);
                        self.spawned.remove(&scatter);
                    }
                }
                continue;
            }
            if let Ok(Some((region, scatter))) =
                spread_pcp_axes(&pcp, j, gap, self.thresholds.spread_factor)
            {
                self.regions.insert(key, region);
                if !self.views.contains_key(&scatter.id) {
                    self.spawned.insert(scatter.id.clone());
                    self.views.insert(scatter.id.clone(), scatter);
                }
            }
        }
        None
    }

    fn release_element(&mut self, view_id: &str, item: &str, grip: &Grip, t: f64) -> Option<Command> {
        let moved = grip.hand.position - grip.hand_start.position;
        let owner = self.composites.iter().find(|c| match &c.payload {
            Payload::Anchors(a) => a.client == view_id && a.entries.iter().any(|e| e.item == item),
            Payload::Nests(n) => n.host == view_id && n.entries.iter().any(|e| e.element == item),
            _ => false,
        });
        if let Some(c) = owner.cloned() {
            return match c.ty {
                CompositeType::Superimposed if moved.y >= self.thresholds.pull_distance => {
                    self.decompose_command(&c, DecomposeTrigger::Lifted)
                }
                CompositeType::Nested => {
                    let host = self.views.get(view_id)?;
                    let obb: Obb = obb_of(
                        host,
                        self.data.table(&host.table)?,
                        &Part::Element(item.to_owned()),
                    )
                    .ok()?;
                    if obb.contains(&grip.hand.position, 1e-9) {
                        None
                    } else {
                        self.decompose_command(&c, DecomposeTrigger::DraggedOut)
                    }
                }
                _ => None,
            };
        }

        let view = self.views.get(view_id)?.clone();
        if !view.chart.is_bar()
            || self.composite_of(view_id).is_some()
            || moved.norm() <= self.thresholds.pull_distance
        {
            return None;
        }
        let table = self.data.table(&view.table)?;
        let mut mini = extract_element(&view, table, item).ok()?;
        if self.views.contains_key(&mini.id) {
            return None;
        }
        mini.pose.position = grip.hand.position;
        self.origins.insert(mini.id.clone(), mini.pose);
        let id = mini.id.clone();
        self.views.insert(id.clone(), mini);
        self.refresh(t, false);
        self.commit_best(&id)
    }

    fn apply_command(&mut self, cmd: &Command) {
        match cmd {
            Command::Compose {
                composite,
                replaces,
            } => {
                self.composites.retain(|c| !replaces.contains(&c.id));
                self.composites.push(composite.clone());
                self.next_id += 1;
            }
            Command::Decompose {
                composite,
                views,
                remaining,
                ..
            } => {
                let old = self
                    .composites
                    .iter()
                    .position(|c| &c.id == composite)
                    .map(|i| self.composites.remove(i));
                for v in views {
                    self.views.insert(v.id.clone(), v.clone());
                }
                if let Some(rest) = remaining {
                    self.composites.push(rest.clone());
                }
                if let Some(old) = old {
                    match &old.payload {
                        Payload::Overload(o) => {
                            self.regions.remove(&(o.pcp.clone(), o.axis_pair[0]));
                        }
                        Payload::Layout(l) => {
                            if let Some(src) = &l.source {
                                self.partition_drag.retain(|(v, _), _| v != src);
                            }
                        }
                        _ => {}
                    }
                    for v in &old.constituents {
                        self.spawned.remove(&v.id);
                    }
                }
            }
        }
    }
}

fn axis_unit(axis: Axis) -> Vector3<f64> {
    match axis {
        Axis::X => Vector3::x(),
        Axis::Y => Vector3::y(),
    }
}

/// Rigid follow: the view keeps its grab-time offset from the hand.
fn follow(grip: &Grip) -> Pose {
    let inv = grip.hand_start.rotation.inverse();
    let rel_pos = inv * (grip.view_start.position - grip.hand_start.position);
    let rel_rot = inv * grip.view_start.rotation;
    Pose {
        position: grip.hand.position + grip.hand.rotation * rel_pos,
        rotation: grip.hand.rotation * rel_rot,
        scale: grip.view_start.scale,
    }
}

/// Two-handed manipulation: translation from the hand midpoint, rotation
/// from the inter-hand direction, scale from the inter-hand distance.
fn two_handed_pose(th: &TwoHanded, left: Vector3<f64>, right: Vector3<f64>) -> Pose {
    let d0 = th.right - th.left;
    let d = right - left;
    let (n0, n) = (d0.norm(), d.norm());
    if n0 < 1e-9 || n < 1e-9 {
        return th.view_start;
    }
    let s = n / n0;
    let q = UnitQuaternion::rotation_between(&d0, &d).unwrap_or_else(|| {
        let perp = if d0.x.abs() < 0.9 { Vector3::x() } else { Vector3::y() };
        let axis = nalgebra::Unit::new_normalize(d0.cross(&perp));
        UnitQuaternion::from_axis_angle(&axis, std::f64::consts::PI)
    });
    let mid0 = (th.left + th.right) / 2.0;
    let mid = (left + right) / 2.0;
    Pose {
        position: mid + q * ((th.view_start.position - mid0) * s),
        rotation: q * th.view_start.rotation,
        scale: th.view_start.scale * s,
    }
}
