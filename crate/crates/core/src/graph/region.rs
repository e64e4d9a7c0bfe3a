use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use super::TannerGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum RegionMode {
    /// Each layer holds the maximal intersections of the previous layer.
    Kikuchi,
    /// Kikuchi, then intersections across all layers except between a
    /// region and one of its ancestors.
    #[default]
    Modified,
}

impl std::str::FromStr for RegionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kikuchi" => Ok(RegionMode::Kikuchi),
            "modified" => Ok(RegionMode::Modified),
            _ => Err(format!("unknown region mode {s:?} (kikuchi|modified)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    /// Sorted variable nodes.
    pub vars: Vec<usize>,
    /// Checks whose factor lives in this region (large regions only).
    pub checks: Vec<usize>,
    /// 1 for large regions.
    pub layer: usize,
    pub counting: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionGraph {
    pub mode: RegionMode,
    pub regions: Vec<Region>,
    /// Direct supersets (no region strictly in between).
    pub parents: Vec<Vec<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Variable neighbourhoods of every check, for syndrome tests.
    pub check_supports: Vec<Vec<usize>>,
    pub num_vars: usize,
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.len() <= b.len() && intersect(a, b).len() == a.len()
}

/// New nonempty pairwise intersections of `pool` (in first-seen pair
/// order), keeping only those not strictly inside another candidate.
fn next_layer(
    pool: &[&Vec<usize>],
    known: &HashSet<Vec<usize>>,
    skip_nested: bool,
) -> Vec<Vec<usize>> {
    let mut seen = HashSet::new();
    let mut cand = Vec::new();
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            let x = intersect(pool[i], pool[j]);
            // x equal to one side means a region met its own ancestor
            if skip_nested && (x.len() == pool[i].len() || x.len() == pool[j].len()) {
                continue;
            }
            if !x.is_empty() && !known.contains(&x) && seen.insert(x.clone()) {
                cand.push(x);
            }
        }
    }
    cand.iter()
        .filter(|x| !cand.iter().any(|y| y.len() > x.len() && is_subset(x, y)))
        .cloned()
        .collect()
}

/// Layer 1 is one region per distinct check neighbourhood; later layers
/// follow `mode`. Counting numbers are `1 - sum` over all strict supersets.
pub fn build_region_graph(graph: &TannerGraph, mode: RegionMode) -> RegionGraph {
    let mut regions: Vec<Region> = Vec::new();
    for (c, row) in graph.checks().iter().enumerate() {
        match regions.iter_mut().find(|r| r.vars == *row) {
            Some(r) => r.checks.push(c),
            None => regions.push(Region {
                vars: row.clone(),
                checks: vec![c],
                layer: 1,
                counting: 0,
            }),
        }
    }
    let mut known: HashSet<Vec<usize>> = regions.iter().map(|r| r.vars.clone()).collect();
    let push_layer =
        |regions: &mut Vec<Region>, known: &mut HashSet<Vec<usize>>, layer: Vec<Vec<usize>>| {
            let next = regions.iter().map(|r| r.layer).max().unwrap_or(0) + 1;
            for vars in layer {
                known.insert(vars.clone());
                regions.push(Region {
                    vars,
                    checks: Vec::new(),
                    layer: next,
                    counting: 0,
                });
            }
        };

    let mut last = 1;
    loop {
        let pool: Vec<&Vec<usize>> = regions
            .iter()
            .filter(|r| r.layer == last)
            .map(|r| &r.vars)
            .collect();
        let layer = next_layer(&pool, &known, false);
        if layer.is_empty() {
            break;
        }
        push_layer(&mut regions, &mut known, layer);
        last += 1;
    }
    if mode == RegionMode::Modified {
        loop {
            let pool: Vec<&Vec<usize>> = regions.iter().map(|r| &r.vars).collect();
            let layer = next_layer(&pool, &known, true);
            if layer.is_empty() {
                break;
            }
            push_layer(&mut regions, &mut known, layer);
        }
    }

    let n = regions.len();
    let supersets: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    regions[j].vars.len() > regions[i].vars.len()
                        && is_subset(&regions[i].vars, &regions[j].vars)
                })
                .collect()
        })
        .collect();
    let parents: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            supersets[i]
                .iter()
                .copied()
                .filter(|&p| {
                    !supersets[i]
                        .iter()
                        .any(|&q| q != p && supersets[q].contains(&p))
                })
                .collect()
        })
        .collect();
    let mut children = vec![Vec::new(); n];
    for (c, ps) in parents.iter().enumerate() {
        for &p in ps {
            children[p].push(c);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(regions[i].vars.len()));
    for &i in &order {
        regions[i].counting = 1 - supersets[i]
            .iter()
            .map(|&a| regions[a].counting)
            .sum::<i64>();
    }
    RegionGraph {
        mode,
        regions,
        parents,
        children,
        check_supports: graph.checks().to_vec(),
        num_vars: graph.num_vars(),
    }
}

impl RegionGraph {
    pub fn layer_sizes(&self) -> Vec<usize> {
        let top = self.regions.iter().map(|r| r.layer).max().unwrap_or(0);
        (1..=top)
            .map(|l| self.regions.iter().filter(|r| r.layer == l).count())
            .collect()
    }

    /// Variables whose counting numbers do not sum to 1 (uncovered
    /// variables included).
    pub fn variable_sum_violations(&self) -> Vec<usize> {
        let mut sum = vec![0i64; self.num_vars];
        for r in &self.regions {
            for &v in &r.vars {
                sum[v] += r.counting;
            }
        }
        (0..self.num_vars).filter(|&v| sum[v] != 1).collect()
    }

    /// Checks whose factor is not counted exactly once.
    pub fn check_sum_violations(&self) -> Vec<usize> {
        let mut sum = vec![0i64; self.check_supports.len()];
        for r in &self.regions {
            for &c in &r.checks {
                sum[c] += r.counting;
            }
        }
        (0..sum.len()).filter(|&c| sum[c] != 1).collect()
    }

    /// Every parent strictly contains each of its children.
    pub fn edges_are_nested(&self) -> bool {
        self.parents.iter().enumerate().all(|(c, ps)| {
            ps.iter().all(|&p| {
                let (a, b) = (&self.regions[c].vars, &self.regions[p].vars);
                a.len() < b.len() && is_subset(a, b)
            })
        })
    }

    /// Canonical region list: each region's sorted variables, sorted.
    pub fn canonical(&self) -> BTreeSet<Vec<usize>> {
        self.regions.iter().map(|r| r.vars.clone()).collect()
    }

    /// One line per region: `index layer counting vars...`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, r) in self.regions.iter().enumerate() {
            let vars: Vec<String> = r.vars.iter().map(usize::to_string).collect();
            let parents: Vec<String> = self.parents[i].iter().map(usize::to_string).collect();
            s.push_str(&format!(
                "R{i} layer={} c={} vars={{{}}} parents=[{}]\n",
                r.layer,
                r.counting,
                vars.join(","),
                parents.join(",")
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{build_parity_check, catalog};
    use crate::graph::build_tanner;

    fn example(mode: RegionMode) -> RegionGraph {
        build_region_graph(
            &build_tanner(&build_parity_check(&catalog::example_4x4()).unwrap()),
            mode,
        )
    }

    #[test]
    fn modified_layers_of_the_example() {
        let rg = example(RegionMode::Modified);
        assert_eq!(rg.layer_sizes(), vec![16, 16, 16]);
        assert!(rg.regions[16..32].iter().all(|r| r.vars.len() == 2));
        let singles: Vec<usize> = rg.regions[32..].iter().map(|r| r.vars[0]).collect();
        assert_eq!(
            singles.iter().copied().collect::<BTreeSet<_>>(),
            (0..16).collect()
        );
        assert!(rg.variable_sum_violations().is_empty());
        assert!(rg.check_sum_violations().is_empty());
        assert!(rg.edges_are_nested());
    }

    #[test]
    fn kikuchi_stops_after_two_layers() {
        let rg = example(RegionMode::Kikuchi);
        assert_eq!(rg.layer_sizes(), vec![16, 16]);
        // bits 0..16 sit in three large regions and one pair
        assert_eq!(rg.variable_sum_violations(), (0..16).collect::<Vec<_>>());
    }

    #[test]
    fn counting_numbers_of_the_example() {
        let rg = example(RegionMode::Modified);
        let find = |v: &[usize]| rg.regions.iter().position(|r| r.vars == v).unwrap();
        assert_eq!(rg.regions[find(&[0, 16])].counting, -1);
        assert_eq!(rg.regions[find(&[0])].counting, -1);
        let mut ps: Vec<usize> = rg.parents[find(&[0])].clone();
        ps.sort_unstable();
        assert_eq!(ps, vec![0, find(&[0, 16])]);
    }
}
