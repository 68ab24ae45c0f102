use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct S5Class {
    /// Cycle lengths in decreasing order, fixed points included.
    pub cycle_type: Vec<usize>,
    /// Splitting type of an unramified prime with this Frobenius.
    pub splitting_type: String,
    pub representative: [usize; 5],
    pub size: usize,
    pub centralizer: usize,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lens = Vec::new();
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

/// Class order: e, (12), (123), (1234), (12345), (12)(34), (12)(345).
const ORDER: [&[usize]; 7] = [
    &[1, 1, 1, 1, 1],
    &[2, 1, 1, 1],
    &[3, 1, 1],
    &[4, 1],
    &[5],
    &[2, 2, 1],
    &[3, 2],
];

/// Conjugacy classes of S5 found by enumerating all 120 permutations.
pub fn s5_class_data() -> Vec<S5Class> {
    let all = permutations(5);
    ORDER
        .iter()
        .map(|ct| {
            let members: Vec<&Vec<usize>> =
                all.iter().filter(|p| cycle_type(p) == *ct).collect();
            let rep = members
                .iter()
                .min()
                .copied()
                .expect("every cycle type occurs")
                .clone();
            let centralizer = all
                .iter()
                .filter(|g| compose(g, &rep) == compose(&rep, g))
                .count();
            let mut split: Vec<usize> = ct.to_vec();
            split.sort_unstable();
            S5Class {
                cycle_type: ct.to_vec(),
                splitting_type: format!(
                    "({})",
                    split.iter().map(|d| d.to_string()).collect::<String>()
                ),
                representative: [rep[0], rep[1], rep[2], rep[3], rep[4]],
                size: members.len(),
                centralizer,
            }
        })
        .collect()
}
