//! Shared output type for all builders: an exact point set, its visibility
//! graph, and provenance (what each point lies on, which collinear groups the
//! construction intends, and which collinearities arose beyond those).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formats::{parse_graph, parse_points, write_graph, write_points};
use crate::projgeom::{orient_affine, ProjPoint};
use crate::visibility::{maximal_collinear_sets, visibility_graph, PointSet, VisibilityGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    Segment,
    Ray,
    BundleRay,
    Extension,
    Line,
}

/// Points the construction intends to be collinear.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollinearGroup {
    pub name: String,
    pub kind: GroupKind,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub kind: String,
    /// Roles per label, e.g. `segment:S0`, `ray:r2`, `apex`.
    pub roles: BTreeMap<String, Vec<String>>,
    pub groups: Vec<CollinearGroup>,
    /// Maximal collinear sets (size >= 3) not contained in any declared group.
    pub extra_collinear: Vec<Vec<String>>,
    pub notes: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct ConstructionOutput {
    pub points: PointSet,
    pub graph: VisibilityGraph,
    pub provenance: Provenance,
}

/// Accumulates distinct points with their roles and group memberships.
#[derive(Default)]
pub(crate) struct PointBuilder {
    points: Vec<ProjPoint>,
    index: HashMap<ProjPoint, usize>,
    roles: Vec<BTreeSet<String>>,
    labels: Vec<Option<String>>,
    groups: Vec<(String, GroupKind, BTreeSet<usize>)>,
    group_index: HashMap<String, usize>,
}

impl PointBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds (or finds) a point and tags it with `role`.
    pub fn add(&mut self, p: ProjPoint, role: &str) -> usize {
        let i = match self.index.get(&p) {
            Some(&i) => i,
            None => {
                let i = self.points.len();
                self.index.insert(p.clone(), i);
                self.points.push(p);
                self.roles.push(BTreeSet::new());
                self.labels.push(None);
                i
            }
        };
        if !role.is_empty() {
            self.roles[i].insert(role.to_string());
        }
        i
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn set_label(&mut self, i: usize, label: &str) {
        self.labels[i] = Some(label.to_string());
    }

    pub fn tag(&mut self, i: usize, role: &str) {
        self.roles[i].insert(role.to_string());
    }

    pub fn declare(&mut self, group: &str, kind: GroupKind) {
        if !self.group_index.contains_key(group) {
            self.group_index.insert(group.to_string(), self.groups.len());
            self.groups.push((group.to_string(), kind, BTreeSet::new()));
        }
    }

    /// Adds point `i` to the declared group `group`, declaring it if needed.
    pub fn join_group(&mut self, i: usize, group: &str, kind: GroupKind) {
        self.declare(group, kind);
        let g = self.group_index[group];
        self.groups[g].2.insert(i);
    }

    /// Labels, point set, groups (as index sets) and roles.
    pub fn finish(self, kind: &str, notes: BTreeMap<String, String>) -> Result<ConstructionOutput> {
        let n = self.points.len();
        let width = n.saturating_sub(1).to_string().len().max(3);
        let labels: Vec<String> = self
            .labels
            .iter()
            .enumerate()
            .map(|(i, l)| l.clone().unwrap_or_else(|| format!("v{i:0width$}")))
            .collect();
        let points = PointSet::new(labels.clone(), self.points)?;
        let groups: Vec<CollinearGroup> = self
            .groups
            .into_iter()
            .filter(|(_, _, m)| m.len() >= 2)
            .map(|(name, kind, members)| CollinearGroup {
                name,
                kind,
                members: members.into_iter().map(|i| labels[i].clone()).collect(),
            })
            .collect();
        let roles = labels
            .iter()
            .zip(self.roles)
            .map(|(l, r)| (l.clone(), r.into_iter().collect()))
            .collect();
        let provenance = Provenance {
            kind: kind.to_string(),
            roles,
            groups,
            extra_collinear: Vec::new(),
            notes,
        };
        ConstructionOutput::assemble(points, provenance)
    }
}

impl ConstructionOutput {
    /// Computes the graph and the extra-collinearity list for a point set
    /// with declared provenance.
    pub fn assemble(points: PointSet, mut provenance: Provenance) -> Result<Self> {
        for g in &provenance.groups {
            for m in &g.members {
                points.index_of(m)?;
            }
        }
        let graph = visibility_graph(&points);
        provenance.extra_collinear = extra_collinear(&points, &provenance.groups)?;
        Ok(ConstructionOutput {
            points,
            graph,
            provenance,
        })
    }

    pub fn group(&self, name: &str) -> Option<&CollinearGroup> {
        self.provenance.groups.iter().find(|g| g.name == name)
    }

    pub fn group_indices(&self, name: &str) -> Option<Vec<usize>> {
        self.group(name).map(|g| {
            g.members
                .iter()
                .map(|m| self.points.index_of(m).expect("group members are valid labels"))
                .collect()
        })
    }

    /// Labels carrying the given role.
    pub fn labels_with_role(&self, role: &str) -> Vec<&str> {
        self.provenance
            .roles
            .iter()
            .filter(|(_, r)| r.iter().any(|x| x == role))
            .map(|(l, _)| l.as_str())
            .collect()
    }

    /// Re-derives everything checkable from the coordinates alone.
    pub fn audit(&self) -> Vec<String> {
        let mut problems = Vec::new();
        for g in &self.provenance.groups {
            if let Some(bad) = non_collinear_member(&self.points, &g.members) {
                problems.push(format!("group {} is not collinear at {bad}", g.name));
            }
        }
        let recomputed = visibility_graph(&self.points);
        match recomputed.first_difference(&self.graph) {
            Ok(None) => {}
            Ok(Some((u, v, in_coords))) => problems.push(format!(
                "stored graph differs at {u}-{v} (edge in coordinates: {in_coords})"
            )),
            Err(e) => problems.push(e.to_string()),
        }
        match extra_collinear(&self.points, &self.provenance.groups) {
            Ok(extra) if extra == self.provenance.extra_collinear => {}
            Ok(_) => problems.push("extra collinear sets changed".into()),
            Err(e) => problems.push(e.to_string()),
        }
        problems
    }
}

pub const CONSTRUCTION_FILES: [&str; 3] = ["points.txt", "graph.txt", "provenance.json"];

impl ConstructionOutput {
    pub fn write_dir(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("points.txt"), write_points(&self.points))?;
        fs::write(dir.join("graph.txt"), write_graph(&self.graph))?;
        fs::write(dir.join("provenance.json"), write_provenance(&self.provenance))?;
        Ok(())
    }

    /// Reads the three files back without recomputing anything.
    pub fn read_dir(dir: &Path) -> Result<Self> {
        let points = parse_points(&fs::read_to_string(dir.join("points.txt"))?)?;
        let graph = parse_graph(&fs::read_to_string(dir.join("graph.txt"))?, Some(points.labels()))?;
        let provenance = parse_provenance(&fs::read_to_string(dir.join("provenance.json"))?)?;
        Ok(ConstructionOutput { points, graph, provenance })
    }
}

/// First member of `members` not on the line through the first two.
pub(crate) fn non_collinear_member<'a>(ps: &PointSet, members: &'a [String]) -> Option<&'a str> {
    if members.len() < 3 {
        return None;
    }
    let idx = |m: &String| ps.index_of(m).ok().map(|i| ps.point(i));
    let (a, b) = (idx(&members[0])?, idx(&members[1])?);
    members[2..]
        .iter()
        .find(|m| idx(m).is_none_or(|c| orient_affine(a, b, c) != 0))
        .map(String::as_str)
}

fn extra_collinear(ps: &PointSet, groups: &[CollinearGroup]) -> Result<Vec<Vec<String>>> {
    let sets: Vec<BTreeSet<usize>> = groups
        .iter()
        .map(|g| g.members.iter().map(|m| ps.index_of(m)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    Ok(maximal_collinear_sets(ps)
        .into_iter()
        .filter(|line| !sets.iter().any(|g| line.iter().all(|i| g.contains(i))))
        .map(|line| line.into_iter().map(|i| ps.label(i).to_string()).collect())
        .collect())
}

pub(crate) fn parse_provenance(text: &str) -> Result<Provenance> {
    serde_json::from_str(text).map_err(Error::from)
}

pub(crate) fn write_provenance(p: &Provenance) -> String {
    let mut s = serde_json::to_string_pretty(p).expect("provenance serializes");
    s.push('\n');
    s
}
