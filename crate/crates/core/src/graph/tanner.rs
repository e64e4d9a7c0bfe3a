use crate::codec::{ParityCheck, SparseBinary};

/// Torus coordinates of the nodes when the graph came from a code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusLayout {
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
}

/// Bipartite check/variable adjacency of a realized parity matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TannerGraph {
    /// Sorted variable neighbours of each check.
    checks: Vec<Vec<usize>>,
    /// Sorted check neighbours of each variable.
    vars: Vec<Vec<usize>>,
    layout: Option<TorusLayout>,
}

pub fn build_tanner(h: &ParityCheck) -> TannerGraph {
    let (n1, n2) = h.info();
    let mut g = TannerGraph::from_sparse(&h.matrix);
    g.layout = Some(TorusLayout { n: h.n(), n1, n2 });
    g
}

impl TannerGraph {
    /// Graph of an arbitrary (for example imported LDPC) matrix.
    pub fn from_sparse(m: &SparseBinary) -> TannerGraph {
        let checks: Vec<Vec<usize>> = m
            .row_supports()
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.sort_unstable();
                r
            })
            .collect();
        let mut vars = vec![Vec::new(); m.cols()];
        for (c, row) in checks.iter().enumerate() {
            for &v in row {
                vars[v].push(c);
            }
        }
        TannerGraph {
            checks,
            vars,
            layout: None,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn num_checks(&self) -> usize {
        self.checks.len()
    }

    pub fn num_edges(&self) -> usize {
        self.checks.iter().map(Vec::len).sum()
    }

    pub fn check(&self, c: usize) -> &[usize] {
        &self.checks[c]
    }

    pub fn checks(&self) -> &[Vec<usize>] {
        &self.checks
    }

    pub fn var(&self, v: usize) -> &[usize] {
        &self.vars[v]
    }

    pub fn layout(&self) -> Option<TorusLayout> {
        self.layout
    }

    /// `(plane, k1, k2)` of a variable node.
    pub fn var_position(&self, v: usize) -> Option<(usize, usize, usize)> {
        self.layout.map(|l| split(v, l))
    }

    /// `(parity row, k1, k2)` of a check node.
    pub fn check_position(&self, c: usize) -> Option<(usize, usize, usize)> {
        self.layout.map(|l| split(c, l))
    }

    pub fn syndrome_weight(&self, bits: &[u8]) -> usize {
        self.checks
            .iter()
            .filter(|row| row.iter().fold(0u8, |acc, &v| acc ^ bits[v]) == 1)
            .count()
    }
}

fn split(idx: usize, l: TorusLayout) -> (usize, usize, usize) {
    let area = l.n1 * l.n2;
    (idx / area, idx % area / l.n2, idx % l.n2)
}
