use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::grid::{Grid, Site};
use super::signals::{move_requirements, pairs_across, sqswap_requirements_with, LineId, SignalRequirements};
use crate::instruction::{CycleType, Instruction};

/// Conflict kinds, declared in reporting priority: when several apply, the
/// first one here becomes the report's `kind`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConflictKind {
    MixedTypes,
    BlockedPath,
    BarrierClash,
    UnwantedInteraction,
    QlContradiction,
}

impl fmt::Display for ConflictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConflictKind::MixedTypes => "MIXED_TYPES",
            ConflictKind::BlockedPath => "BLOCKED_PATH",
            ConflictKind::BarrierClash => "BARRIER_CLASH",
            ConflictKind::UnwantedInteraction => "UNWANTED_INTERACTION",
            ConflictKind::QlContradiction => "QL_CONTRADICTION",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conflict {
    pub kind: ConflictKind,
    /// Indices into the checked instruction list.
    pub culprits: Vec<usize>,
    pub detail: String,
    /// Contradictory edges `(a, b)` = "QL_a above QL_b", each on a cycle.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ql_cycle: Vec<(i64, i64)>,
}

impl Conflict {
    pub fn new(kind: ConflictKind, culprits: impl IntoIterator<Item = usize>, detail: String) -> Conflict {
        let culprits: BTreeSet<usize> = culprits.into_iter().collect();
        Conflict { kind, culprits: culprits.into_iter().collect(), detail, ql_cycle: Vec::new() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Ok,
    Conflict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConflictReport {
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<ConflictKind>,
    pub culprits: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conflicts: Vec<Conflict>,
}

impl ConflictReport {
    pub fn from_conflicts(mut conflicts: Vec<Conflict>) -> ConflictReport {
        conflicts.sort_by(|a, b| (a.kind, &a.culprits).cmp(&(b.kind, &b.culprits)));
        match conflicts.first() {
            None => ConflictReport { verdict: Verdict::Ok, kind: None, culprits: Vec::new(), conflicts },
            Some(c) => {
                let (kind, culprits) = (c.kind, c.culprits.clone());
                ConflictReport { verdict: Verdict::Conflict, kind: Some(kind), culprits, conflicts }
            }
        }
    }

    pub fn is_ok(&self) -> bool {
        self.verdict == Verdict::Ok
    }

    pub fn has(&self, kind: ConflictKind) -> bool {
        self.conflicts.iter().any(|c| c.kind == kind)
    }

    /// All instructions named by any conflict.
    pub fn all_culprits(&self) -> BTreeSet<usize> {
        self.conflicts.iter().flat_map(|c| c.culprits.iter().copied()).collect()
    }

    pub fn ql_cycle(&self) -> Option<&[(i64, i64)]> {
        self.conflicts.iter().find(|c| c.kind == ConflictKind::QlContradiction).map(|c| c.ql_cycle.as_slice())
    }
}

/// Strict ordering of QL voltages implied by `edges`. Returns the lines
/// from highest to lowest voltage, or every edge lying on a directed cycle
/// when no ordering exists.
pub fn ql_order(edges: &BTreeSet<(i64, i64)>) -> Result<Vec<i64>, Vec<(i64, i64)>> {
    let mut succ: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    let mut indeg: BTreeMap<i64, usize> = BTreeMap::new();
    for &(a, b) in edges {
        succ.entry(a).or_default().push(b);
        succ.entry(b).or_default();
        indeg.entry(a).or_insert(0);
        *indeg.entry(b).or_insert(0) += 1;
    }
    let mut ready: BTreeSet<i64> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&k, _)| k).collect();
    let mut order = Vec::with_capacity(indeg.len());
    while let Some(k) = ready.pop_first() {
        order.push(k);
        for &s in &succ[&k] {
            let d = indeg.get_mut(&s).unwrap();
            *d -= 1;
            if *d == 0 {
                ready.insert(s);
            }
        }
    }
    if order.len() == indeg.len() {
        return Ok(order);
    }
    // An edge lies on a cycle iff its tail is reachable from its head.
    let reach = |from: i64| {
        let mut seen = BTreeSet::from([from]);
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            for &v in &succ[&u] {
                if seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen
    };
    let mut cache: HashMap<i64, BTreeSet<i64>> = HashMap::new();
    Err(edges
        .iter()
        .copied()
        .filter(|&(a, b)| cache.entry(b).or_insert_with(|| reach(b)).contains(&a))
        .collect())
}

/// Per-instruction requirements in the context of the whole set: qubits
/// that are themselves operands never contribute stay-put constraints.
fn contextual_requirements(grid: &Grid, instrs: &[Instruction]) -> Vec<SignalRequirements> {
    let operands: BTreeSet<usize> = instrs.iter().flat_map(|i| i.operands()).collect();
    let skip = |q: usize| operands.contains(&q);
    instrs
        .iter()
        .map(|i| match *i {
            Instruction::Sqswap { a, b } => sqswap_requirements_with(grid, a, b, &skip).unwrap_or_default(),
            _ => match i.movement() {
                Some((q, dir)) => move_requirements(grid, q, dir, &skip).unwrap_or_default(),
                None => SignalRequirements::default(),
            },
        })
        .collect()
}

fn blocked_paths(grid: &Grid, instrs: &[Instruction]) -> Vec<Conflict> {
    let mut out = Vec::new();
    let mut users: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, ins) in instrs.iter().enumerate() {
        for q in ins.operands() {
            users.entry(q).or_default().push(i);
        }
    }
    for (q, idx) in &users {
        if idx.len() > 1 {
            out.push(Conflict::new(ConflictKind::BlockedPath, idx.clone(), format!("qubit {q} used more than once")));
        }
    }
    let mut dests: BTreeMap<Site, Vec<usize>> = BTreeMap::new();
    for (i, ins) in instrs.iter().enumerate() {
        if let Instruction::Sqswap { a, b } = *ins {
            let ok = matches!((grid.try_position(a), grid.try_position(b)),
                (Ok(pa), Ok(pb)) if pa.x == pb.x && pa.y.abs_diff(pb.y) == 1);
            if !ok {
                out.push(Conflict::new(ConflictKind::BlockedPath, [i], format!("sqswap {a},{b} not vertically adjacent")));
            }
        } else if let Some((q, dir)) = ins.movement() {
            match grid.destination(q, dir) {
                Ok(d) => dests.entry(d).or_default().push(i),
                Err(e) => out.push(Conflict::new(ConflictKind::BlockedPath, [i], e.to_string())),
            }
        }
    }
    for (d, idx) in dests {
        if idx.len() > 1 {
            out.push(Conflict::new(ConflictKind::BlockedPath, idx, format!("several moves end at ({},{})", d.x, d.y)));
        }
    }
    out
}

/// Positions after all moves of the set land.
fn landed(grid: &Grid, instrs: &[Instruction]) -> Grid {
    let mut g = grid.clone();
    // blocked sets are rejected before this point
    g.apply_all(instrs).expect("legal moves");
    g
}

/// Checks whether a set of instructions can share one cycle.
///
/// All requirements are merged: mixed cycle types, blocked or duplicated
/// moves, a line both lowered and raised, two non-partner qubits facing
/// each other across a lowered barrier once the moves land, and cyclic QL
/// orderings are reported. The report's `kind` is the highest-priority
/// conflict found.
pub fn check_parallel_set(grid: &Grid, instrs: &[Instruction]) -> ConflictReport {
    if instrs.is_empty() {
        return ConflictReport::from_conflicts(Vec::new());
    }
    let types: BTreeSet<&str> = instrs.iter().map(|i| i.cycle_type().name()).collect();
    if types.len() > 1 {
        let detail = format!("cycle mixes {}", types.into_iter().collect::<Vec<_>>().join(", "));
        return ConflictReport::from_conflicts(vec![Conflict::new(ConflictKind::MixedTypes, 0..instrs.len(), detail)]);
    }
    let ty = instrs[0].cycle_type();
    if matches!(ty, CycleType::XyRot | CycleType::XyRotInv) {
        return ConflictReport::from_conflicts(semi_global_clashes(instrs));
    }

    let blocked = blocked_paths(grid, instrs);
    if !blocked.is_empty() {
        return ConflictReport::from_conflicts(blocked);
    }

    let reqs = contextual_requirements(grid, instrs);
    let mut conflicts = Vec::new();

    // barrier clashes
    let mut lowered_by: BTreeMap<LineId, Vec<usize>> = BTreeMap::new();
    let mut raised_by: BTreeMap<LineId, Vec<usize>> = BTreeMap::new();
    for (i, r) in reqs.iter().enumerate() {
        for &l in &r.lowered {
            lowered_by.entry(l).or_default().push(i);
        }
        for &l in &r.raised {
            raised_by.entry(l).or_default().push(i);
        }
    }
    for (l, low) in &lowered_by {
        if let Some(high) = raised_by.get(l) {
            for &i in low {
                for &j in high.iter().filter(|&&j| j != i) {
                    conflicts.push(Conflict::new(
                        ConflictKind::BarrierClash,
                        [i, j],
                        format!("{l} lowered by #{i} and raised by #{j}"),
                    ));
                }
            }
        }
    }

    // unwanted interactions once the moves have landed
    let after = landed(grid, instrs);
    let partners: BTreeSet<(usize, usize)> = instrs
        .iter()
        .filter_map(|i| match *i {
            Instruction::Sqswap { a, b } => Some((a.min(b), a.max(b))),
            _ => None,
        })
        .collect();
    for (l, low) in &lowered_by {
        for (s, t) in pairs_across(&after, *l) {
            if let (Some(u), Some(v)) = (after.occupant(s), after.occupant(t)) {
                if partners.contains(&(u.min(v), u.max(v))) {
                    continue;
                }
                let mut culprits: BTreeSet<usize> = low.iter().copied().collect();
                for (i, ins) in instrs.iter().enumerate() {
                    if ins.operands().iter().any(|&q| q == u || q == v) {
                        culprits.insert(i);
                    }
                }
                conflicts.push(Conflict::new(
                    ConflictKind::UnwantedInteraction,
                    culprits,
                    format!("qubits {u} and {v} face each other across lowered {l}"),
                ));
            }
        }
    }

    // QL ordering
    let mut edges = BTreeSet::new();
    let mut owners: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, r) in reqs.iter().enumerate() {
        for &e in &r.ql_gt {
            edges.insert(e);
            owners.entry(e).or_default().push(i);
        }
    }
    if let Err(cycle) = ql_order(&edges) {
        let culprits: BTreeSet<usize> = cycle.iter().flat_map(|e| owners[e].iter().copied()).collect();
        let detail = cycle.iter().map(|(a, b)| format!("QL_{a}>QL_{b}")).collect::<Vec<_>>().join(", ");
        let mut c = Conflict::new(ConflictKind::QlContradiction, culprits, format!("cyclic QL ordering: {detail}"));
        c.ql_cycle = cycle;
        conflicts.push(c);
    }

    ConflictReport::from_conflicts(conflicts)
}

/// Two pulses on one parity in a single cycle cannot be told apart.
fn semi_global_clashes(instrs: &[Instruction]) -> Vec<Conflict> {
    let mut by_parity: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, ins) in instrs.iter().enumerate() {
        if let Instruction::SgRot { parity, .. } | Instruction::SgRotInv { parity, .. } = ins {
            by_parity.entry(parity.name()).or_default().push(i);
        }
    }
    by_parity
        .into_iter()
        .filter(|(_, v)| v.len() > 1)
        .map(|(p, v)| Conflict::new(ConflictKind::BarrierClash, v, format!("several pulses on {p} columns")))
        .collect()
}
