//! Exact transportation simplex over big rationals, optimal-face
//! identification, iterative proportional fitting, and support-cycle
//! cancellation.

use crate::{BigRational, Error, Result};
use num_traits::Zero;
use std::collections::BTreeSet;

pub(crate) fn br_zero() -> BigRational {
    BigRational::zero()
}

pub(crate) fn br_int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Solves `min sum c_ij x_ij` subject to exact row sums `a` and column
/// sums `b`, `x >= 0`. Returns the mass matrix and one optimal dual pair.
///
/// Pivoting follows Bland's rule on lexicographic cell order, which cannot
/// cycle even under degeneracy.
pub fn transport_simplex(
    costs: &[Vec<BigRational>],
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<Vec<BigRational>>, Vec<BigRational>, Vec<BigRational>) {
    let m = a.len();
    let n = b.len();
    assert!(m > 0 && n > 0);
    debug_assert_eq!(a.iter().sum::<BigRational>(), b.iter().sum::<BigRational>());

    // Northwest-corner initial basis.
    let mut x = vec![vec![br_zero(); n]; m];
    let mut basis: BTreeSet<(usize, usize)> = BTreeSet::new();
    {
        let mut arem = a.to_vec();
        let mut brem = b.to_vec();
        let (mut i, mut j) = (0, 0);
        loop {
            let t = arem[i].clone().min(brem[j].clone());
            x[i][j] = t.clone();
            basis.insert((i, j));
            arem[i] -= t.clone();
            brem[j] -= t;
            if i + 1 == m && j + 1 == n {
                break;
            }
            // advance along the exhausted side; prefer rows on ties so the
            // basis stays a spanning tree
            if arem[i].is_zero() && i + 1 < m {
                i += 1;
            } else {
                j += 1;
            }
        }
    }
    debug_assert_eq!(basis.len(), m + n - 1);

    loop {
        let (u, v) = duals_from_basis(costs, &basis, m, n);
        // Bland: first cell in lexicographic order with negative reduced cost
        let mut entering = None;
        'scan: for i in 0..m {
            for j in 0..n {
                if !basis.contains(&(i, j)) && costs[i][j].clone() - &u[i] - &v[j] < br_zero() {
                    entering = Some((i, j));
                    break 'scan;
                }
            }
        }
        let Some(ent) = entering else {
            return (x, u, v);
        };
        // unique cycle in basis + entering, alternating row/column moves
        let cycle = find_cycle(&basis, ent, m, n);
        // positions at odd indices lose mass
        let mut theta: Option<BigRational> = None;
        for (k, &(i, j)) in cycle.iter().enumerate() {
            if k % 2 == 1 {
                let val = x[i][j].clone();
                if theta.as_ref().map_or(true, |t| val < *t) {
                    theta = Some(val);
                }
            }
        }
        let theta = theta.expect("cycle has a leaving candidate");
        let mut leaving = None;
        for (k, &(i, j)) in cycle.iter().enumerate() {
            if k % 2 == 1 {
                if x[i][j] == theta && leaving.is_none() {
                    leaving = Some((i, j));
                }
                x[i][j] -= theta.clone();
            } else {
                x[i][j] += theta.clone();
            }
        }
        basis.insert(ent);
        basis.remove(&leaving.expect("leaving cell"));
    }
}

fn duals_from_basis(
    costs: &[Vec<BigRational>],
    basis: &BTreeSet<(usize, usize)>,
    m: usize,
    n: usize,
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut u: Vec<Option<BigRational>> = vec![None; m];
    let mut v: Vec<Option<BigRational>> = vec![None; n];
    u[0] = Some(br_zero());
    let mut changed = true;
    while changed {
        changed = false;
        for &(i, j) in basis {
            match (&u[i], &v[j]) {
                (Some(ui), None) => {
                    v[j] = Some(costs[i][j].clone() - ui);
                    changed = true;
                }
                (None, Some(vj)) => {
                    u[i] = Some(costs[i][j].clone() - vj);
                    changed = true;
                }
                _ => {}
            }
        }
    }
    (
        u.into_iter().map(|o| o.expect("basis spans rows")).collect(),
        v.into_iter().map(|o| o.expect("basis spans columns")).collect(),
    )
}

/// The unique alternating cycle created by adding `ent` to the basis tree,
/// returned as cells starting with `ent`.
fn find_cycle(basis: &BTreeSet<(usize, usize)>, ent: (usize, usize), m: usize, n: usize) -> Vec<(usize, usize)> {
    // nodes: rows 0..m, columns m..m+n; find the tree path from ent.1's
    // column node back to ent.0's row node
    let mut adj: Vec<Vec<(usize, (usize, usize))>> = vec![Vec::new(); m + n];
    for &(i, j) in basis {
        adj[i].push((m + j, (i, j)));
        adj[m + j].push((i, (i, j)));
    }
    let start = m + ent.1;
    let goal = ent.0;
    let mut prev: Vec<Option<(usize, (usize, usize))>> = vec![None; m + n];
    let mut stack = vec![start];
    let mut seen = vec![false; m + n];
    seen[start] = true;
    while let Some(node) = stack.pop() {
        if node == goal {
            break;
        }
        for &(next, cell) in &adj[node] {
            if !seen[next] {
                seen[next] = true;
                prev[next] = Some((node, cell));
                stack.push(next);
            }
        }
    }
    let mut cells = vec![ent];
    let mut node = goal;
    while node != start {
        let (parent, cell) = prev[node].clone().expect("basis tree connects all nodes");
        cells.push(cell);
        node = parent;
    }
    cells
}

/// Zero-reduced-cost cells of an optimal dual: the support superset of the
/// whole optimal face.
pub fn optimal_face(
    costs: &[Vec<BigRational>],
    u: &[BigRational],
    v: &[BigRational],
) -> Vec<Vec<bool>> {
    costs
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, c)| (c.clone() - &u[i] - &v[j]).is_zero()).collect())
        .collect()
}

/// Restricts a face to the cells that can carry positive mass in some
/// feasible plan on it: a zero cell is supportable exactly when the
/// bipartite exchange graph (decrease along positive cells, increase along
/// face cells) closes a cycle through it.
pub fn prune_face_to_supportable(allowed: &mut Vec<Vec<bool>>, x: &[Vec<BigRational>]) {
    let m = x.len();
    let n = x[0].len();
    // reach[c] = set of rows reachable from column c alternating
    // (decrease positive cell) then (increase allowed cell) steps
    for i in 0..m {
        for j in 0..n {
            if !allowed[i][j] || !x[i][j].is_zero() {
                continue;
            }
            // BFS from column j over alternating edges, looking for row i
            let mut row_seen = vec![false; m];
            let mut col_seen = vec![false; n];
            col_seen[j] = true;
            let mut col_queue = vec![j];
            let mut found = false;
            'bfs: while let Some(c) = col_queue.pop() {
                for r in 0..m {
                    if !row_seen[r] && !x[r][c].is_zero() {
                        row_seen[r] = true;
                        if r == i {
                            found = true;
                            break 'bfs;
                        }
                        for c2 in 0..n {
                            if !col_seen[c2] && allowed[r][c2] {
                                col_seen[c2] = true;
                                col_queue.push(c2);
                            }
                        }
                    }
                }
            }
            if !found {
                allowed[i][j] = false;
            }
        }
    }
}

/// Iterative proportional fitting of the max-entropy plan supported on the
/// allowed cells, to marginal residual `tol`.
pub fn ipf(
    allowed: &[Vec<bool>],
    a: &[f64],
    b: &[f64],
    tol: f64,
    max_iters: usize,
) -> Result<Vec<Vec<f64>>> {
    let m = a.len();
    let n = b.len();
    let mut x: Vec<Vec<f64>> = allowed
        .iter()
        .map(|row| row.iter().map(|&ok| if ok { 1.0 } else { 0.0 }).collect())
        .collect();
    for _ in 0..max_iters {
        for i in 0..m {
            let s: f64 = x[i].iter().sum();
            if s > 0.0 {
                let f = a[i] / s;
                for cell in x[i].iter_mut() {
                    *cell *= f;
                }
            }
        }
        let mut resid: f64 = 0.0;
        for j in 0..n {
            let s: f64 = (0..m).map(|i| x[i][j]).sum();
            if s > 0.0 {
                let f = b[j] / s;
                for row in x.iter_mut() {
                    row[j] *= f;
                }
            }
            resid = resid.max((s - b[j]).abs());
        }
        if resid < tol {
            return Ok(x);
        }
    }
    // final residual after the cap
    let resid = (0..n)
        .map(|j| ((0..m).map(|i| x[i][j]).sum::<f64>() - b[j]).abs())
        .fold(0.0f64, f64::max);
    Err(Error::IpfDiverged(resid))
}

/// Cancels support cycles of a plan without changing its cost, until the
/// bipartite support graph is a forest. The per-cycle update pushes mass
/// around the cycle by the smaller of the two alternating minima, which
/// zeroes at least one support cell.
pub fn cancel_cycles_to_forest(x: &mut Vec<Vec<BigRational>>, costs: &[Vec<BigRational>]) {
    let m = x.len();
    let n = x[0].len();
    loop {
        let support: BTreeSet<(usize, usize)> = (0..m)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !x[i][j].is_zero())
            .collect();
        let Some(cycle) = find_support_cycle(&support, m, n) else {
            return;
        };
        // alternate +-: eps2 = min over odd cells, eps1 = min over even
        let min_at = |parity: usize| -> BigRational {
            cycle
                .iter()
                .enumerate()
                .filter(|(k, _)| k % 2 == parity)
                .map(|(_, &(i, j))| x[i][j].clone())
                .min()
                .unwrap()
        };
        let (eps1, eps2) = (min_at(0), min_at(1));
        let before: BigRational =
            cycle.iter().map(|&(i, j)| x[i][j].clone() * &costs[i][j]).sum();
        if eps2 <= eps1 {
            for (k, &(i, j)) in cycle.iter().enumerate() {
                if k % 2 == 1 {
                    x[i][j] -= eps2.clone();
                } else {
                    x[i][j] += eps2.clone();
                }
            }
        } else {
            for (k, &(i, j)) in cycle.iter().enumerate() {
                if k % 2 == 1 {
                    x[i][j] += eps1.clone();
                } else {
                    x[i][j] -= eps1.clone();
                }
            }
        }
        let after: BigRational = cycle.iter().map(|&(i, j)| x[i][j].clone() * &costs[i][j]).sum();
        assert_eq!(before, after, "cycle cancellation must preserve cost on an optimal plan");
    }
}

/// Finds any cycle in the bipartite support graph, as an alternating cell
/// sequence, or `None` if the support is a forest.
fn find_support_cycle(support: &BTreeSet<(usize, usize)>, m: usize, n: usize) -> Option<Vec<(usize, usize)>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m + n];
    for &(i, j) in support {
        adj[i].push(m + j);
        adj[m + j].push(i);
    }
    fn dfs(
        node: usize,
        par: usize,
        adj: &[Vec<usize>],
        visited: &mut [bool],
        parent: &mut [usize],
    ) -> Option<(usize, usize)> {
        visited[node] = true;
        for &next in &adj[node] {
            if next == par {
                continue;
            }
            if visited[next] {
                return Some((node, next)); // back edge to an ancestor
            }
            parent[next] = node;
            if let Some(hit) = dfs(next, node, adj, visited, parent) {
                return Some(hit);
            }
        }
        None
    }
    let mut visited = vec![false; m + n];
    let mut parent = vec![usize::MAX; m + n];
    for start in 0..m + n {
        if visited[start] {
            continue;
        }
        if let Some((node, anc)) = dfs(start, usize::MAX, &adj, &mut visited, &mut parent) {
            let mut path = vec![node];
            let mut cur = node;
            while cur != anc {
                cur = parent[cur];
                path.push(cur);
            }
            let mut cells = Vec::new();
            for w in 0..path.len() {
                let (p, q) = (path[w], path[(w + 1) % path.len()]);
                let cell = if p < m { (p, q - m) } else { (q, p - m) };
                cells.push(cell);
            }
            return Some(cells);
        }
    }
    None
}

/// Enumerates basic feasible plans supported on the allowed cells, up to
/// `cap` plans. Returns the plans and whether the enumeration was truncated.
pub fn enumerate_basic_plans(
    allowed: &[Vec<bool>],
    a: &[BigRational],
    b: &[BigRational],
    cap: usize,
) -> (Vec<Vec<Vec<BigRational>>>, bool) {
    let m = a.len();
    let n = b.len();
    let cells: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| allowed[i][j])
        .collect();
    let need = m + n - 1;
    let mut plans: Vec<Vec<Vec<BigRational>>> = Vec::new();
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut capped = false;
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    rec_trees(&cells, 0, need, m, n, &mut chosen, &mut |tree| {
        if plans.len() >= cap {
            capped = true;
            return false;
        }
        if let Some(x) = solve_tree(tree, a, b, m, n) {
            let support: Vec<(usize, usize)> = (0..m)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !x[i][j].is_zero())
                .collect();
            if seen.insert(support) {
                plans.push(x);
            }
        }
        true
    });
    (plans, capped)
}

fn rec_trees(
    cells: &[(usize, usize)],
    start: usize,
    need: usize,
    m: usize,
    n: usize,
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut impl FnMut(&[(usize, usize)]) -> bool,
) -> bool {
    if chosen.len() == need {
        if is_spanning_tree(chosen, m, n) {
            return visit(chosen);
        }
        return true;
    }
    if cells.len() - start < need - chosen.len() {
        return true;
    }
    for k in start..cells.len() {
        chosen.push(cells[k]);
        if !rec_trees(cells, k + 1, need, m, n, chosen, visit) {
            chosen.pop();
            return false;
        }
        chosen.pop();
    }
    true
}

fn is_spanning_tree(cells: &[(usize, usize)], m: usize, n: usize) -> bool {
    let mut parent: Vec<usize> = (0..m + n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = m + n;
    for &(i, j) in cells {
        let (a, b) = (find(&mut parent, i), find(&mut parent, m + j));
        if a == b {
            return false;
        }
        parent[a] = b;
        comps -= 1;
    }
    comps == 1
}

/// Solves the unique flow on a spanning tree basis; `None` if any cell
/// would go negative.
fn solve_tree(
    tree: &[(usize, usize)],
    a: &[BigRational],
    b: &[BigRational],
    m: usize,
    n: usize,
) -> Option<Vec<Vec<BigRational>>> {
    let mut x = vec![vec![br_zero(); n]; m];
    let mut deg = vec![0usize; m + n];
    let mut rem: Vec<BigRational> = a.iter().chain(b.iter()).cloned().collect();
    let mut alive: Vec<Vec<(usize, usize)>> = vec![Vec::new(); m + n];
    for &(i, j) in tree {
        deg[i] += 1;
        deg[m + j] += 1;
        alive[i].push((i, j));
        alive[m + j].push((i, j));
    }
    let mut used = vec![false; tree.len()];
    let index_of = |cell: (usize, usize)| tree.iter().position(|&c| c == cell).unwrap();
    let mut queue: Vec<usize> = (0..m + n).filter(|&v| deg[v] == 1).collect();
    while let Some(node) = queue.pop() {
        let Some(&cell) = alive[node].iter().find(|&&c| !used[index_of(c)]) else {
            continue;
        };
        let (i, j) = cell;
        used[index_of(cell)] = true;
        let flow = rem[node].clone();
        if flow < br_zero() {
            return None;
        }
        x[i][j] = flow.clone();
        let other = if node == i { m + j } else { i };
        rem[other] -= flow;
        rem[node] = br_zero();
        deg[i] -= 1;
        deg[m + j] -= 1;
        if deg[other] == 1 {
            queue.push(other);
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(p: i64, q: i64) -> BigRational {
        br_int(p) / br_int(q)
    }

    #[test]
    fn simplex_point_masses() {
        let costs = vec![vec![br_int(9)]];
        let (x, _, _) = transport_simplex(&costs, &[br_int(1)], &[br_int(1)]);
        assert_eq!(x[0][0], br_int(1));
    }

    #[test]
    fn simplex_prefers_cheap_matching() {
        // two sources, two sinks; the identity matching is cheap
        let costs = vec![vec![br_int(0), br_int(4)], vec![br_int(4), br_int(0)]];
        let a = vec![br(1, 2), br(1, 2)];
        let (x, u, v) = transport_simplex(&costs, &a, &a);
        assert_eq!(x[0][0], br(1, 2));
        assert_eq!(x[1][1], br(1, 2));
        assert!(x[0][1].is_zero() && x[1][0].is_zero());
        // duals certify optimality
        for i in 0..2 {
            for j in 0..2 {
                assert!(costs[i][j].clone() - &u[i] - &v[j] >= br_zero());
            }
        }
    }

    #[test]
    fn simplex_handles_degenerate_marginals() {
        let costs = vec![
            vec![br_int(1), br_int(2), br_int(3)],
            vec![br_int(2), br_int(1), br_int(2)],
            vec![br_int(3), br_int(2), br_int(1)],
        ];
        let a = vec![br(1, 3), br(1, 3), br(1, 3)];
        let (x, _, _) = transport_simplex(&costs, &a, &a);
        let cost: BigRational = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .map(|(i, j)| x[i][j].clone() * &costs[i][j])
            .sum();
        assert_eq!(cost, br_int(1));
        for i in 0..3 {
            let row: BigRational = x[i].iter().sum();
            assert_eq!(row, br(1, 3));
        }
    }

    #[test]
    fn ipf_uniform_marginals_gives_product() {
        let allowed = vec![vec![true; 3]; 3];
        let a = [1.0 / 3.0; 3];
        let x = ipf(&allowed, &a, &a, 1e-12, 1000).unwrap();
        for row in &x {
            for &cell in row {
                assert!((cell - 1.0 / 9.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn cycle_cancellation_reaches_forest() {
        // product plan on 2x2 equal costs has one cycle
        let costs = vec![vec![br_int(4); 2]; 2];
        let mut x = vec![vec![br(1, 4); 2]; 2];
        cancel_cycles_to_forest(&mut x, &costs);
        // the tied cycle minima zero a whole parity class at once, so the
        // forest has at most m + n - 1 = 3 support cells
        let support: usize = x.iter().flatten().filter(|c| !c.is_zero()).count();
        assert!(support <= 3 && support >= 2);
        for i in 0..2 {
            let row: BigRational = x[i].iter().sum();
            assert_eq!(row, br(1, 2));
        }
    }

    #[test]
    fn basic_plan_enumeration_2x2() {
        let allowed = vec![vec![true; 2]; 2];
        let a = vec![br(1, 2), br(1, 2)];
        let (plans, capped) = enumerate_basic_plans(&allowed, &a, &a, 100);
        assert!(!capped);
        // four spanning trees, two distinct vertex supports
        assert_eq!(plans.len(), 2);
    }
}
