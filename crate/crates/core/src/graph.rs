//! Predicates on simple undirected graphs given as adjacency lists.

/// Lexicographic breadth-first search.
///
/// Returns the visiting order. Implemented with partition refinement over
/// an ordered list of classes; ties are broken by smallest vertex index.
pub fn lex_bfs(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut classes: Vec<Vec<usize>> = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some(first) = classes.first_mut() {
        let v = first.remove(0);
        if first.is_empty() {
            classes.remove(0);
        }
        visited[v] = true;
        order.push(v);
        let mut is_nbr = vec![false; n];
        for &u in &adj[v] {
            is_nbr[u] = true;
        }
        // Split every class into (neighbours, others), neighbours first.
        let mut refined = Vec::with_capacity(classes.len() * 2);
        for class in classes.drain(..) {
            let (near, far): (Vec<usize>, Vec<usize>) =
                class.into_iter().partition(|&u| is_nbr[u]);
            if !near.is_empty() {
                refined.push(near);
            }
            if !far.is_empty() {
                refined.push(far);
            }
        }
        classes = refined;
    }
    debug_assert!(visited.iter().all(|&x| x));
    order
}

/// Checks that the reverse of `order` is a perfect elimination ordering:
/// for each vertex, its neighbours that come earlier in `order` form a
/// clique.
pub fn is_perfect_elimination_order(adj: &[Vec<usize>], order: &[usize]) -> bool {
    let n = adj.len();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut is_adj = vec![vec![false; n]; n];
    for (v, nb) in adj.iter().enumerate() {
        for &u in nb {
            is_adj[v][u] = true;
        }
    }
    for &v in order {
        let earlier: Vec<usize> = adj[v].iter().copied().filter(|&u| pos[u] < pos[v]).collect();
        // The latest earlier neighbour must see all the others.
        if let Some(&parent) = earlier.iter().max_by_key(|&&u| pos[u]) {
            if earlier.iter().any(|&u| u != parent && !is_adj[parent][u]) {
                return false;
            }
        }
    }
    true
}

pub fn is_chordal(adj: &[Vec<usize>]) -> bool {
    is_perfect_elimination_order(adj, &lex_bfs(adj))
}

/// Acyclic, via union-find over the edge list.
pub fn is_forest(adj: &[Vec<usize>]) -> bool {
    let mut parent: Vec<usize> = (0..adj.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (v, nb) in adj.iter().enumerate() {
        for &u in nb.iter().filter(|&&u| u > v) {
            let (a, b) = (find(&mut parent, v), find(&mut parent, u));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
    }
    true
}
