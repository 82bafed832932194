//! Dinic max-flow over arbitrary-precision integer capacities.
//!
//! The dominance decision clears denominators first, so capacities are
//! exact `BigInt`s and feasibility verdicts carry no rounding.

use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    rev: usize,
    cap: BigInt,
}

/// Flow network with deterministic edge ordering: augmenting paths follow
/// insertion order, so results are reproducible across runs.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    graph: Vec<Vec<Edge>>,
}

impl FlowNetwork {
    pub fn new(num_nodes: usize) -> Self {
        FlowNetwork {
            graph: vec![Vec::new(); num_nodes],
        }
    }

    /// Adds a directed edge and returns a handle for later flow queries.
    pub fn add_edge(&mut self, from: usize, to: usize, cap: BigInt) -> EdgeRef {
        let a = self.graph[from].len();
        let b = self.graph[to].len();
        self.graph[from].push(Edge { to, rev: b, cap });
        self.graph[to].push(Edge {
            to: from,
            rev: a,
            cap: BigInt::zero(),
        });
        EdgeRef { node: from, idx: a }
    }

    /// Flow currently on an edge equals the residual of its reverse.
    pub fn flow_on(&self, edge: &EdgeRef) -> BigInt {
        let e = &self.graph[edge.node][edge.idx];
        self.graph[e.to][e.rev].cap.clone()
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> BigInt {
        let mut total = BigInt::zero();
        loop {
            let level = self.bfs_levels(source);
            if level[sink].is_none() {
                return total;
            }
            let mut iter = vec![0usize; self.graph.len()];
            loop {
                let pushed = self.dfs_push(source, sink, None, &level, &mut iter);
                if pushed.is_zero() {
                    break;
                }
                total += pushed;
            }
        }
    }

    fn bfs_levels(&self, source: usize) -> Vec<Option<u32>> {
        let mut level = vec![None; self.graph.len()];
        level[source] = Some(0);
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for e in &self.graph[v] {
                if e.cap > BigInt::zero() && level[e.to].is_none() {
                    level[e.to] = Some(level[v].unwrap() + 1);
                    queue.push_back(e.to);
                }
            }
        }
        level
    }

    fn dfs_push(
        &mut self,
        v: usize,
        sink: usize,
        limit: Option<BigInt>,
        level: &[Option<u32>],
        iter: &mut [usize],
    ) -> BigInt {
        if v == sink {
            return limit.expect("sink reached without an edge bound");
        }
        while iter[v] < self.graph[v].len() {
            let i = iter[v];
            let (to, cap) = {
                let e = &self.graph[v][i];
                (e.to, e.cap.clone())
            };
            let advance = cap > BigInt::zero()
                && match (level[v], level[to]) {
                    (Some(lv), Some(lt)) => lt == lv + 1,
                    _ => false,
                };
            if advance {
                let next_limit = match &limit {
                    None => cap.clone(),
                    Some(l) => l.clone().min(cap.clone()),
                };
                let pushed = self.dfs_push(to, sink, Some(next_limit), level, iter);
                if !pushed.is_zero() {
                    let rev = self.graph[v][i].rev;
                    self.graph[v][i].cap -= &pushed;
                    self.graph[to][rev].cap += &pushed;
                    return pushed;
                }
            }
            iter[v] += 1;
        }
        BigInt::zero()
    }
}

/// Handle to a forward edge inserted with [`FlowNetwork::add_edge`].
#[derive(Debug, Clone)]
pub struct EdgeRef {
    node: usize,
    idx: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn simple_bipartite_flow() {
        // source 0, left {1,2}, right {3,4}, sink 5
        let mut net = FlowNetwork::new(6);
        net.add_edge(0, 1, big(3));
        net.add_edge(0, 2, big(2));
        let a = net.add_edge(1, 3, big(5));
        net.add_edge(1, 4, big(5));
        net.add_edge(2, 4, big(5));
        net.add_edge(3, 5, big(1));
        net.add_edge(4, 5, big(4));
        assert_eq!(net.max_flow(0, 5), big(5));
        assert_eq!(net.flow_on(&a), big(1));
    }

    #[test]
    fn bottleneck_limits_flow() {
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, big(10));
        net.add_edge(1, 2, big(1));
        net.add_edge(2, 3, big(10));
        assert_eq!(net.max_flow(0, 3), big(1));
    }

    #[test]
    fn huge_capacities_stay_exact() {
        let huge: BigInt = BigInt::from(1u64) << 200;
        let mut net = FlowNetwork::new(3);
        net.add_edge(0, 1, huge.clone());
        net.add_edge(1, 2, huge.clone());
        assert_eq!(net.max_flow(0, 2), huge);
    }

    #[test]
    fn disconnected_sink_gets_zero() {
        let mut net = FlowNetwork::new(3);
        net.add_edge(0, 1, big(4));
        assert_eq!(net.max_flow(0, 2), BigInt::zero());
    }
}
