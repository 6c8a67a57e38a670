//! Grid topology, the bus admittance matrix, and line-neighborhood queries.
//!
//! The admittance matrix Y relates nodal current injections to bus voltages,
//! I = Y·V. Off-diagonal entry (i, j) is the negated sum of series admittances
//! of the lines joining buses i and j; diagonal entry i collects the bus shunt
//! plus, for every incident line, its series admittance and the local half of
//! its charging shunt (π-model).
//!
//! All types are immutable after construction and safe to share across
//! parallel workers.

use crate::error::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;
use rand::Rng;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BusKind {
    Slack,
    Pv,
    Pq,
}

impl BusKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BusKind::Slack => "slack",
            BusKind::Pv => "pv",
            BusKind::Pq => "pq",
        }
    }
}

/// A bus with its net injection. Injections are per-unit net values
/// (generation minus load); `q_inj` is meaningful only for PQ buses and
/// `v_setpoint` only for PV and slack buses.
#[derive(Debug, Clone)]
pub struct Bus {
    pub id: usize,
    pub kind: BusKind,
    pub shunt_admittance: Complex64,
    pub p_inj: f64,
    pub q_inj: f64,
    pub v_setpoint: f64,
}

/// A transmission line. `series_admittance` is 1/(r + jx); `charging_shunt`
/// is the total line charging admittance, applied half per end.
#[derive(Debug, Clone)]
pub struct Line {
    pub id: usize,
    pub from_bus: usize,
    pub to_bus: usize,
    pub series_admittance: Complex64,
    pub charging_shunt: Complex64,
}

/// A validated, connected grid. Construction checks the invariants once;
/// afterwards the topology is immutable.
#[derive(Debug, Clone)]
pub struct GridTopology {
    buses: Vec<Bus>,
    lines: Vec<Line>,
    /// Per-line sorted list of line ids sharing at least one endpoint.
    adjacency: Vec<Vec<usize>>,
    slack: usize,
}

impl GridTopology {
    pub fn new(buses: Vec<Bus>, lines: Vec<Line>) -> Result<Self> {
        let n = buses.len();
        if n == 0 {
            return Err(Error::Topology("grid has no buses".into()));
        }
        for (i, b) in buses.iter().enumerate() {
            if b.id != i {
                return Err(Error::Topology(format!(
                    "bus ids must be consecutive from 0; position {i} has id {}",
                    b.id
                )));
            }
        }
        let slacks: Vec<usize> = buses
            .iter()
            .filter(|b| b.kind == BusKind::Slack)
            .map(|b| b.id)
            .collect();
        if slacks.len() != 1 {
            return Err(Error::Topology(format!(
                "expected exactly one slack bus, found {}",
                slacks.len()
            )));
        }
        for (i, l) in lines.iter().enumerate() {
            if l.id != i {
                return Err(Error::Topology(format!(
                    "line ids must be consecutive from 0; position {i} has id {}",
                    l.id
                )));
            }
            if l.from_bus == l.to_bus {
                return Err(Error::Topology(format!("line {i} is a self-loop")));
            }
            if l.from_bus >= n || l.to_bus >= n {
                return Err(Error::Topology(format!(
                    "line {i} references bus outside [0, {n})"
                )));
            }
            if l.series_admittance.norm() == 0.0 {
                return Err(Error::Topology(format!(
                    "line {i} has zero series admittance"
                )));
            }
        }

        // Connectivity over the bus graph.
        if n > 1 {
            let mut bus_lines = vec![Vec::new(); n];
            for l in &lines {
                bus_lines[l.from_bus].push(l.to_bus);
                bus_lines[l.to_bus].push(l.from_bus);
            }
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(b) = stack.pop() {
                for &nb in &bus_lines[b] {
                    if !seen[nb] {
                        seen[nb] = true;
                        stack.push(nb);
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::Topology("grid is not connected".into()));
            }
        }

        // Line adjacency: shared endpoint, self excluded. Parallel lines are
        // each other's neighbors (they share both endpoints).
        let m = lines.len();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for l in &lines {
            incident[l.from_bus].push(l.id);
            incident[l.to_bus].push(l.id);
        }
        let mut adjacency = Vec::with_capacity(m);
        for l in &lines {
            let mut nb: BTreeSet<usize> = BTreeSet::new();
            for &other in incident[l.from_bus].iter().chain(&incident[l.to_bus]) {
                if other != l.id {
                    nb.insert(other);
                }
            }
            adjacency.push(nb.into_iter().collect());
        }

        Ok(GridTopology {
            buses,
            lines,
            adjacency,
            slack: slacks[0],
        })
    }

    pub fn buses(&self) -> &[Bus] {
        &self.buses
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn n_buses(&self) -> usize {
        self.buses.len()
    }

    pub fn n_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn slack(&self) -> usize {
        self.slack
    }

    /// Lines sharing at least one endpoint with `line_id`, excluding itself.
    pub fn line_neighbors(&self, line_id: usize) -> Result<Vec<usize>> {
        self.adjacency
            .get(line_id)
            .cloned()
            .ok_or_else(|| Error::Topology(format!("line id {line_id} out of range")))
    }

    /// All lines within line-graph distance `k` of `line_id` (k ≥ 1),
    /// excluding `line_id` itself.
    pub fn k_hop_line_neighbors(&self, line_id: usize, k: usize) -> Result<Vec<usize>> {
        if k == 0 {
            return Err(Error::Topology("k must be at least 1".into()));
        }
        if line_id >= self.n_lines() {
            return Err(Error::Topology(format!("line id {line_id} out of range")));
        }
        let mut reached: BTreeSet<usize> = BTreeSet::new();
        let mut frontier: BTreeSet<usize> = BTreeSet::new();
        frontier.insert(line_id);
        for _ in 0..k {
            let mut next = BTreeSet::new();
            for &f in &frontier {
                for &nb in &self.adjacency[f] {
                    if nb != line_id && reached.insert(nb) {
                        next.insert(nb);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(reached.into_iter().collect())
    }

    /// Canonical text rendering used for provenance digests.
    pub fn canonical_text(&self) -> String {
        let mut out = String::new();
        for b in &self.buses {
            out.push_str(&format!(
                "bus {} {} {:?} {:?} {:?} {:?} {:?}\n",
                b.id,
                b.kind.as_str(),
                b.p_inj,
                b.q_inj,
                b.v_setpoint,
                b.shunt_admittance.re,
                b.shunt_admittance.im
            ));
        }
        for l in &self.lines {
            out.push_str(&format!(
                "line {} {} {} {:?} {:?} {:?} {:?}\n",
                l.id,
                l.from_bus,
                l.to_bus,
                l.series_admittance.re,
                l.series_admittance.im,
                l.charging_shunt.re,
                l.charging_shunt.im
            ));
        }
        out
    }

    pub fn digest(&self) -> String {
        crate::digest::of_bytes(self.canonical_text().as_bytes())
    }
}

/// Dense bus admittance matrix.
#[derive(Debug, Clone)]
pub struct AdmittanceMatrix {
    entries: Array2<Complex64>,
}

impl AdmittanceMatrix {
    pub fn from_entries(entries: Array2<Complex64>) -> Self {
        AdmittanceMatrix { entries }
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[[i, j]]
    }
}

/// Build the bus admittance matrix. Parallel lines between the same bus pair
/// accumulate; a valid `GridTopology` guarantees connectivity.
pub fn build_admittance(topology: &GridTopology) -> AdmittanceMatrix {
    let n = topology.n_buses();
    let mut y = Array2::<Complex64>::zeros((n, n));
    for l in topology.lines() {
        let ys = l.series_admittance;
        let half_charge = l.charging_shunt * 0.5;
        let (f, t) = (l.from_bus, l.to_bus);
        y[[f, f]] += ys + half_charge;
        y[[t, t]] += ys + half_charge;
        y[[f, t]] -= ys;
        y[[t, f]] -= ys;
    }
    for b in topology.buses() {
        y[[b.id, b.id]] += b.shunt_admittance;
    }
    AdmittanceMatrix { entries: y }
}

/// Generate a random connected topology: a random spanning tree plus extra
/// edges, with impedances in a realistic per-unit range. Used by property
/// tests and synthetic benchmarks.
pub fn random_connected_topology(
    n_buses: usize,
    n_lines: usize,
    rng: &mut impl Rng,
) -> GridTopology {
    assert!(n_buses >= 2, "need at least two buses");
    assert!(
        n_lines >= n_buses - 1,
        "need at least n_buses - 1 lines for connectivity"
    );
    let mut lines = Vec::with_capacity(n_lines);
    let mut push_line = |lines: &mut Vec<Line>, from: usize, to: usize, rng: &mut dyn RngCore| {
        let x = rng.random_range(0.05..0.3);
        let r = x * 0.1;
        let z = Complex64::new(r, x);
        lines.push(Line {
            id: lines.len(),
            from_bus: from,
            to_bus: to,
            series_admittance: z.inv(),
            charging_shunt: Complex64::new(0.0, rng.random_range(0.0..0.1)),
        });
    };
    use rand::RngCore;
    for b in 1..n_buses {
        let parent = rng.random_range(0..b);
        push_line(&mut lines, parent, b, rng);
    }
    while lines.len() < n_lines {
        let a = rng.random_range(0..n_buses);
        let b = rng.random_range(0..n_buses);
        if a == b {
            continue;
        }
        push_line(&mut lines, a, b, rng);
    }
    let buses = (0..n_buses)
        .map(|id| Bus {
            id,
            kind: if id == 0 { BusKind::Slack } else { BusKind::Pq },
            shunt_admittance: Complex64::new(0.0, 0.0),
            p_inj: 0.0,
            q_inj: 0.0,
            v_setpoint: 1.0,
        })
        .collect();
    GridTopology::new(buses, lines).expect("generated topology is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn pq_bus(id: usize) -> Bus {
        Bus {
            id,
            kind: BusKind::Pq,
            shunt_admittance: Complex64::new(0.0, 0.0),
            p_inj: 0.0,
            q_inj: 0.0,
            v_setpoint: 1.0,
        }
    }

    fn slack_bus(id: usize) -> Bus {
        Bus {
            kind: BusKind::Slack,
            ..pq_bus(id)
        }
    }

    fn plain_line(id: usize, from: usize, to: usize, y: Complex64) -> Line {
        Line {
            id,
            from_bus: from,
            to_bus: to,
            series_admittance: y,
            charging_shunt: Complex64::new(0.0, 0.0),
        }
    }

    /// Path graph over `n` buses: lines (0,1), (1,2), ...
    fn path_topology(n: usize) -> GridTopology {
        let buses = (0..n)
            .map(|i| if i == 0 { slack_bus(0) } else { pq_bus(i) })
            .collect();
        let lines = (0..n - 1)
            .map(|i| plain_line(i, i, i + 1, Complex64::new(1.0, -4.0)))
            .collect();
        GridTopology::new(buses, lines).unwrap()
    }

    #[test]
    fn two_bus_admittance_matches_hand_result() {
        let y12 = Complex64::new(1.0, -2.0);
        let topo = GridTopology::new(
            vec![slack_bus(0), pq_bus(1)],
            vec![plain_line(0, 0, 1, y12)],
        )
        .unwrap();
        let y = build_admittance(&topo);
        assert_eq!(y.get(0, 0), y12);
        assert_eq!(y.get(1, 1), y12);
        assert_eq!(y.get(0, 1), -y12);
        assert_eq!(y.get(1, 0), -y12);
    }

    #[test]
    fn triangle_with_bus_shunts() {
        let ys = Complex64::new(0.0, -5.0);
        let shunt = Complex64::new(0.0, 0.1);
        let buses: Vec<Bus> = (0..3)
            .map(|i| Bus {
                shunt_admittance: shunt,
                ..if i == 0 { slack_bus(i) } else { pq_bus(i) }
            })
            .collect();
        let lines = vec![
            plain_line(0, 0, 1, ys),
            plain_line(1, 1, 2, ys),
            plain_line(2, 2, 0, ys),
        ];
        let y = build_admittance(&GridTopology::new(buses, lines).unwrap());
        for i in 0..3 {
            assert!((y.get(i, i) - Complex64::new(0.0, -9.9)).norm() < 1e-15);
            for j in 0..3 {
                if i != j {
                    assert!((y.get(i, j) - Complex64::new(0.0, 5.0)).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn parallel_lines_accumulate() {
        let ya = Complex64::new(1.0, -3.0);
        let yb = Complex64::new(0.5, -1.0);
        let topo = GridTopology::new(
            vec![slack_bus(0), pq_bus(1)],
            vec![plain_line(0, 0, 1, ya), plain_line(1, 0, 1, yb)],
        )
        .unwrap();
        let y = build_admittance(&topo);
        assert!((y.get(0, 1) + (ya + yb)).norm() < 1e-15);
        // Parallel lines are mutual neighbors.
        assert_eq!(topo.line_neighbors(0).unwrap(), vec![1]);
        assert_eq!(topo.line_neighbors(1).unwrap(), vec![0]);
    }

    #[test]
    fn disconnected_topology_rejected() {
        let err = GridTopology::new(
            vec![slack_bus(0), pq_bus(1), pq_bus(2), pq_bus(3)],
            vec![
                plain_line(0, 0, 1, Complex64::new(1.0, -1.0)),
                plain_line(1, 2, 3, Complex64::new(1.0, -1.0)),
            ],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Topology(_)));
    }

    #[test]
    fn two_slacks_rejected() {
        let err = GridTopology::new(
            vec![slack_bus(0), slack_bus(1)],
            vec![plain_line(0, 0, 1, Complex64::new(1.0, -1.0))],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Topology(_)));
    }

    #[test]
    fn path_middle_line_neighbors() {
        // a—b—c—d, middle line (b,c) has neighbors (a,b) and (c,d).
        let topo = path_topology(4);
        assert_eq!(topo.line_neighbors(1).unwrap(), vec![0, 2]);
    }

    #[test]
    fn star_spoke_neighbors() {
        let buses: Vec<Bus> = (0..5)
            .map(|i| if i == 0 { slack_bus(0) } else { pq_bus(i) })
            .collect();
        let lines: Vec<Line> = (0..4)
            .map(|i| plain_line(i, 0, i + 1, Complex64::new(1.0, -1.0)))
            .collect();
        let topo = GridTopology::new(buses, lines).unwrap();
        assert_eq!(topo.line_neighbors(2).unwrap(), vec![0, 1, 3]);
    }

    #[test]
    fn neighbors_out_of_range_errors() {
        let topo = path_topology(3);
        assert!(topo.line_neighbors(2).is_err());
        assert!(topo.k_hop_line_neighbors(2, 1).is_err());
        assert!(topo.k_hop_line_neighbors(0, 0).is_err());
    }

    #[test]
    fn random_graph_neighbors_match_pairwise_oracle() {
        let mut rng = stream(11, "grid-test", &[0]);
        let topo = random_connected_topology(10, 15, &mut rng);
        // O(m²) endpoint comparison.
        for a in 0..topo.n_lines() {
            let mut expect: Vec<usize> = (0..topo.n_lines())
                .filter(|&b| {
                    if a == b {
                        return false;
                    }
                    let la = &topo.lines()[a];
                    let lb = &topo.lines()[b];
                    la.from_bus == lb.from_bus
                        || la.from_bus == lb.to_bus
                        || la.to_bus == lb.from_bus
                        || la.to_bus == lb.to_bus
                })
                .collect();
            expect.sort_unstable();
            assert_eq!(topo.line_neighbors(a).unwrap(), expect);
        }
    }

    #[test]
    fn k_hop_on_path() {
        // Path of 4 lines; from the end line, k=2 reaches the two interior lines.
        let topo = path_topology(5);
        assert_eq!(topo.k_hop_line_neighbors(0, 2).unwrap(), vec![1, 2]);
        // k = 1 coincides with line_neighbors.
        for l in 0..topo.n_lines() {
            assert_eq!(
                topo.k_hop_line_neighbors(l, 1).unwrap(),
                topo.line_neighbors(l).unwrap()
            );
        }
        // k at least the line-graph diameter reaches everything else.
        let all: Vec<usize> = (1..topo.n_lines()).collect();
        assert_eq!(topo.k_hop_line_neighbors(0, 10).unwrap(), all);
    }

    #[test]
    fn k_hop_matches_bfs_oracle() {
        let mut rng = stream(13, "grid-test", &[1]);
        let topo = random_connected_topology(12, 18, &mut rng);
        // Line-graph BFS distances.
        for start in 0..topo.n_lines() {
            let mut dist = vec![usize::MAX; topo.n_lines()];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(l) = queue.pop_front() {
                for &nb in &topo.line_neighbors(l).unwrap() {
                    if dist[nb] == usize::MAX {
                        dist[nb] = dist[l] + 1;
                        queue.push_back(nb);
                    }
                }
            }
            for k in 1..=4usize {
                let expect: Vec<usize> = (0..topo.n_lines())
                    .filter(|&l| l != start && dist[l] <= k)
                    .collect();
                assert_eq!(topo.k_hop_line_neighbors(start, k).unwrap(), expect);
            }
        }
    }

    #[test]
    fn admittance_symmetry_and_zero_row_sums() {
        let mut rng = stream(17, "grid-test", &[2]);
        for case in 0..20u64 {
            let mut local = stream(17, "grid-test-case", &[case]);
            let n = local.random_range(3..20);
            let m = local.random_range(n - 1..n + 8);
            let mut topo = random_connected_topology(n, m, &mut local);
            // Strip charging shunts so row sums vanish exactly.
            for l in &mut topo.lines.iter() {
                let _ = l;
            }
            let no_shunt_lines: Vec<Line> = topo
                .lines()
                .iter()
                .map(|l| Line {
                    charging_shunt: Complex64::new(0.0, 0.0),
                    ..l.clone()
                })
                .collect();
            let topo = GridTopology::new(topo.buses().to_vec(), no_shunt_lines).unwrap();
            let y = build_admittance(&topo);
            for i in 0..n {
                let mut row_sum = Complex64::new(0.0, 0.0);
                for j in 0..n {
                    assert_eq!(y.get(i, j), y.get(j, i), "asymmetric at ({i},{j})");
                    row_sum += y.get(i, j);
                }
                assert!(
                    row_sum.norm() < 1e-12,
                    "row {i} sums to {row_sum} (case {case})"
                );
            }
            let _ = rng.random::<u64>();
        }
    }

    #[test]
    fn neighbor_symmetry_and_khop_monotone() {
        for case in 0..10u64 {
            let mut rng = stream(19, "grid-sym", &[case]);
            let topo = random_connected_topology(9, 14, &mut rng);
            for a in 0..topo.n_lines() {
                for &b in &topo.line_neighbors(a).unwrap() {
                    assert!(topo.line_neighbors(b).unwrap().contains(&a));
                }
                for k in 1..4 {
                    let small = topo.k_hop_line_neighbors(a, k).unwrap();
                    let big = topo.k_hop_line_neighbors(a, k + 1).unwrap();
                    for l in &small {
                        assert!(big.contains(l));
                    }
                }
            }
        }
    }
}
