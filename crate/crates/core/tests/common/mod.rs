//! Oracles shared by the integration tests.

use augrack::algebra::AugmentedData;

/// Independent restatement of every axiom of an augmented rack.
pub fn oracle_valid(d: &AugmentedData) -> bool {
    let n = d.nu.len();
    let order = d.group.order;
    let t = &d.group.table;
    let e = d.group.identity;
    let group_ok = (0..order).all(|a| t[e][a] == a && t[a][e] == a)
        && (0..order).all(|a| {
            let mut row: Vec<usize> = t[a].clone();
            let mut col: Vec<usize> = (0..order).map(|b| t[b][a]).collect();
            row.sort_unstable();
            col.sort_unstable();
            row == (0..order).collect::<Vec<_>>() && col == (0..order).collect::<Vec<_>>()
        })
        && (0..order).all(|a| {
            (0..order).all(|b| (0..order).all(|c| t[t[a][b]][c] == t[a][t[b][c]]))
        });
    if !group_ok {
        return false;
    }
    let inv = |g: usize| (0..order).find(|&h| t[g][h] == e).unwrap();
    let act = |x: usize, g: usize| d.action[x][g];
    let action_ok = (0..n).all(|x| act(x, e) == x)
        && (0..n).all(|x| (0..order).all(|g| (0..order).all(|h| act(act(x, g), h) == act(x, t[g][h]))));
    if !action_ok {
        return false;
    }
    let equivariant =
        (0..n).all(|x| (0..order).all(|g| d.nu[act(x, g)] == t[t[inv(g)][d.nu[x]]][g]));
    if !equivariant {
        return false;
    }
    let op = |x: usize, y: usize| act(x, d.nu[y]);
    let op_inv = |x: usize, y: usize| act(x, inv(d.nu[y]));
    if let Some(table) = &d.op {
        if (0..n).any(|x| (0..n).any(|y| table[x][y] != op(x, y))) {
            return false;
        }
    }
    match &d.rho {
        None => true,
        Some(rho) => (0..n).all(|x| {
            rho[rho[x]] == x
                && d.nu[rho[x]] == inv(d.nu[x])
                && (0..n).all(|y| rho[op(x, y)] == op(rho[x], y) && op(x, rho[y]) == op_inv(x, y))
        }),
    }
}

/// Every single-entry change of the group table, action, ν, ρ and rack table.
pub fn mutations(d: &AugmentedData) -> Vec<AugmentedData> {
    let mut out = Vec::new();
    let order = d.group.order;
    let n = d.nu.len();
    for i in 0..order {
        for j in 0..order {
            for v in 0..order {
                if v != d.group.table[i][j] {
                    let mut m = d.clone();
                    m.group.table[i][j] = v;
                    out.push(m);
                }
            }
        }
    }
    for x in 0..n {
        for g in 0..order {
            for v in 0..n {
                if v != d.action[x][g] {
                    let mut m = d.clone();
                    m.action[x][g] = v;
                    out.push(m);
                }
            }
        }
        for v in 0..order {
            if v != d.nu[x] {
                let mut m = d.clone();
                m.nu[x] = v;
                out.push(m);
            }
        }
        if let Some(rho) = &d.rho {
            for v in 0..n {
                if v != rho[x] {
                    let mut m = d.clone();
                    m.rho.as_mut().unwrap()[x] = v;
                    out.push(m);
                }
            }
        }
        if let Some(op) = &d.op {
            for y in 0..n {
                for v in 0..n {
                    if v != op[x][y] {
                        let mut m = d.clone();
                        m.op.as_mut().unwrap()[x][y] = v;
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}
