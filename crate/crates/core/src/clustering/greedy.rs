use serde::{Deserialize, Serialize};

use super::{cluster_term, perform_cut, side_of, validity_index, ClusterPartition, WeightedTree};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DbmstcluConfig {
    /// Accept a cut only if it strictly raises DBCVI. The default accepts
    /// ties, as the reference pseudocode's `>=` does.
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcceptedCut {
    pub edge: usize,
    pub dbcvi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DbmstcluRun {
    pub partition: ClusterPartition,
    pub steps: Vec<AcceptedCut>,
}

pub fn dbmstclu(tree: &WeightedTree) -> ClusterPartition {
    dbmstclu_with(tree, DbmstcluConfig::default()).partition
}

/// Greedy DBCVI maximization by tree-edge cuts.
///
/// The running score starts at -1, so the best first cut is always taken.
/// Each round evaluates every uncut edge, picks the one giving the highest
/// DBCVI (lowest edge index among equals) and accepts it when it does not
/// lower the running score. Stops at DBCVI 1 or when nothing is accepted.
pub fn dbmstclu_with(tree: &WeightedTree, config: DbmstcluConfig) -> DbmstcluRun {
    let n = tree.node_count();
    let mut partition = ClusterPartition::single(tree);
    let mut steps = Vec::new();
    let mut split = -1.0;
    let mut lightest_cut = vec![f64::INFINITY; n];
    let mut mark = vec![false; n];
    let mut in_cluster_edge = vec![false; tree.edge_count()];

    while split < 1.0 {
        let terms: Vec<(usize, f64)> = (0..partition.cluster_count())
            .map(|c| (partition.clusters()[c][0], current_term(&partition, c, tree, &lightest_cut)))
            .collect();

        let mut best: Option<(usize, f64)> = None;
        for c in 0..partition.cluster_count() {
            let nodes = &partition.clusters()[c];
            let edges = &partition.subtree_edges()[c];
            for &e in edges {
                in_cluster_edge[e] = true;
            }
            for &e in edges {
                let (u, _) = tree.edge(e);
                let side = side_of(tree, u, e, &in_cluster_edge, &mut mark);
                for &x in &side {
                    mark[x] = true;
                }
                let w = tree.weight(e);
                let (mut disp_a, mut disp_b) = (0.0f64, 0.0f64);
                for &f in edges {
                    if f != e {
                        if mark[tree.edge(f).0] {
                            disp_a = disp_a.max(tree.weight(f));
                        } else {
                            disp_b = disp_b.max(tree.weight(f));
                        }
                    }
                }
                let (mut sep_a, mut sep_b) = (w, w);
                let mut min_b = usize::MAX;
                for &x in nodes {
                    if mark[x] {
                        sep_a = sep_a.min(lightest_cut[x]);
                    } else {
                        sep_b = sep_b.min(lightest_cut[x]);
                        min_b = min_b.min(x);
                    }
                }
                let min_a = side.iter().copied().min().expect("side holds its start");
                for &x in &side {
                    mark[x] = false;
                }
                let term_a = cluster_term(side.len(), validity_index(sep_a, disp_a));
                let term_b = cluster_term(nodes.len() - side.len(), validity_index(sep_b, disp_b));
                let score = merged_sum(&terms, c, (min_a, term_a), (min_b, term_b)) / n as f64;
                let better = match best {
                    None => true,
                    Some((best_edge, best_score)) => score > best_score || (score == best_score && e < best_edge),
                };
                if better {
                    best = Some((e, score));
                }
            }
            for &e in edges {
                in_cluster_edge[e] = false;
            }
        }

        let accepted = match best {
            Some((_, score)) if config.strict => score > split,
            Some((_, score)) => score >= split,
            None => false,
        };
        if !accepted {
            break;
        }
        let (edge, _) = best.expect("accepted implies a candidate");
        partition = perform_cut(&partition, edge, tree).expect("candidate is an uncut tree edge");
        let (u, v) = tree.edge(edge);
        lightest_cut[u] = lightest_cut[u].min(tree.weight(edge));
        lightest_cut[v] = lightest_cut[v].min(tree.weight(edge));
        split = partition.dbcvi();
        steps.push(AcceptedCut { edge, dbcvi: split });
    }
    DbmstcluRun { partition, steps }
}

fn current_term(partition: &ClusterPartition, c: usize, tree: &WeightedTree, lightest_cut: &[f64]) -> f64 {
    let nodes = &partition.clusters()[c];
    let sep = if partition.cluster_count() == 1 {
        1.0
    } else {
        nodes.iter().map(|&x| lightest_cut[x]).fold(f64::INFINITY, f64::min)
    };
    let disp = partition.subtree_edges()[c].iter().map(|&e| tree.weight(e)).fold(0.0, f64::max);
    cluster_term(nodes.len(), validity_index(sep, disp))
}

/// Sums `terms` with entry `skip` replaced by `a` and `b`, in ascending order
/// of smallest node so the result matches a full recomputation bit for bit.
fn merged_sum(terms: &[(usize, f64)], skip: usize, a: (usize, f64), b: (usize, f64)) -> f64 {
    let (first, second) = if a.0 < b.0 { (a, b) } else { (b, a) };
    let mut extra = [first, second].into_iter().peekable();
    let mut total = 0.0;
    for (i, &(key, term)) in terms.iter().enumerate() {
        if i == skip {
            continue;
        }
        while let Some(&(k, t)) = extra.peek() {
            if k < key {
                total += t;
                extra.next();
            } else {
                break;
            }
        }
        total += term;
    }
    for (_, t) in extra {
        total += t;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clustering::dbcvi;

    fn path(weights: &[f64]) -> WeightedTree {
        let edges = (0..weights.len()).map(|i| (i, i + 1)).collect();
        WeightedTree::new(weights.len() + 1, edges, weights.to_vec()).unwrap()
    }

    /// Brute-force replay of the greedy rule with full recomputation.
    fn reference(tree: &WeightedTree, strict: bool) -> Vec<AcceptedCut> {
        let mut p = ClusterPartition::single(tree);
        let mut split = -1.0;
        let mut out = Vec::new();
        while split < 1.0 {
            let mut best: Option<(usize, f64)> = None;
            for e in 0..tree.edge_count() {
                if p.is_cut(e) {
                    continue;
                }
                let q = perform_cut(&p, e, tree).unwrap();
                let s = dbcvi(&q, tree);
                if best.is_none_or(|(_, b)| s > b) {
                    best = Some((e, s));
                }
            }
            match best {
                Some((e, s)) if s > split || (!strict && s == split) => {
                    p = perform_cut(&p, e, tree).unwrap();
                    split = s;
                    out.push(AcceptedCut { edge: e, dbcvi: s });
                }
                _ => break,
            }
        }
        out
    }

    #[test]
    fn three_node_path() {
        let t = path(&[0.1, 0.9]);
        let run = dbmstclu_with(&t, DbmstcluConfig::default());
        assert_eq!(run.steps[0].edge, 1);
        assert!((run.steps[0].dbcvi - 0.925_925_925_925_925_9).abs() < 1e-12);
        // Cutting the remaining 0.1 edge yields three singletons, each with
        // validity 1, which the >= rule accepts.
        assert_eq!(run.steps.len(), 2);
        assert_eq!(run.partition.dbcvi(), 1.0);
        assert_eq!(run.steps, reference(&t, false));
    }

    #[test]
    fn uniform_path_follows_tie_rule() {
        let t = path(&[0.5; 4]);
        let run = dbmstclu_with(&t, DbmstcluConfig::default());
        assert_eq!(run.steps, reference(&t, false));
        assert!(run.partition.dbcvi() >= ClusterPartition::single(&t).dbcvi());
        let strict = dbmstclu_with(&t, DbmstcluConfig { strict: true });
        assert_eq!(strict.steps, reference(&t, true));
    }

    #[test]
    fn bridge_is_cut_first() {
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for block in 0..2 {
            for i in 1..10 {
                edges.push((block * 10 + i - 1, block * 10 + i));
                weights.push(0.05 + 0.01 * i as f64);
            }
        }
        edges.push((9, 10));
        weights.push(1.0);
        let t = WeightedTree::new(20, edges, weights).unwrap();
        let run = dbmstclu_with(&t, DbmstcluConfig::default());
        assert_eq!(run.steps[0].edge, 18);
        assert_eq!(run.steps, reference(&t, false));
    }

    #[test]
    fn incremental_scores_match_full_recomputation() {
        let t = WeightedTree::new(
            7,
            vec![(0, 1), (1, 2), (1, 3), (3, 4), (0, 5), (5, 6)],
            vec![0.3, 0.9, 0.2, 0.75, 1.0, 0.1],
        )
        .unwrap();
        let run = dbmstclu_with(&t, DbmstcluConfig::default());
        assert_eq!(run.steps, reference(&t, false));
        for w in run.steps.windows(2) {
            assert!(w[1].dbcvi >= w[0].dbcvi);
        }
        let replay = ClusterPartition::from_cuts(&t, run.partition.cut_edges()).unwrap();
        assert_eq!(replay, run.partition);
    }

    #[test]
    fn single_node_and_single_edge() {
        let lone = WeightedTree::new(1, vec![], vec![]).unwrap();
        let run = dbmstclu_with(&lone, DbmstcluConfig::default());
        assert!(run.steps.is_empty());
        assert_eq!(run.partition.cluster_count(), 1);

        let two = path(&[0.4]);
        assert_eq!(dbmstclu(&two).cluster_count(), 2);
    }

    #[test]
    fn merged_sum_orders_by_smallest_node() {
        let terms = [(0, 0.1), (4, 0.2), (7, 0.3)];
        let s = merged_sum(&terms, 1, (4, 0.05), (5, 0.15));
        assert_eq!(s, ((0.1 + 0.05) + 0.15) + 0.3);
        let s = merged_sum(&terms, 0, (9, 1.0), (0, 2.0));
        assert_eq!(s, ((2.0 + 0.2) + 0.3) + 1.0);
    }
}
