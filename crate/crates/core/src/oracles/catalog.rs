use crate::graph::Digraph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative of every isomorphism class of digraphs with
/// `0..=max_n` vertices and `0..=max_m` arcs. Parallel and antiparallel arcs
/// are allowed; loops only when `loops` is set.
///
/// The representative is the class member whose sorted arc list is
/// lexicographically smallest, and its arcs are listed in that order.
pub fn digraph_catalog(max_n: usize, max_m: usize, loops: bool) -> Vec<Digraph> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (0..n).map(move |v| (u, v)))
            .filter(|&(u, v)| loops || u != v)
            .collect();
        let perms = permutations(n);
        for m in 0..=max_m {
            if pairs.is_empty() && m > 0 {
                break;
            }
            // multisets of size m as nondecreasing index sequences
            let mut idx = vec![0usize; m];
            loop {
                let arcs: Vec<(usize, usize)> = idx.iter().map(|&i| pairs[i]).collect();
                let minimal = perms.iter().all(|p| {
                    let mut image: Vec<(usize, usize)> =
                        arcs.iter().map(|&(t, h)| (p[t], p[h])).collect();
                    image.sort_unstable();
                    image >= arcs
                });
                if minimal {
                    out.push(Digraph::new(n, arcs).expect("catalog arcs are in range"));
                }
                // advance
                let mut i = m;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if idx[i] + 1 < pairs.len() {
                        idx[i] += 1;
                        let v = idx[i];
                        for j in idx.iter_mut().skip(i + 1) {
                            *j = v;
                        }
                        i = usize::MAX;
                        break;
                    }
                }
                if i != usize::MAX {
                    break;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(digraph_catalog(1, 3, false).len(), 2);
        // n=2: arcs are a->b or b->a; classes by (#ab, #ba) up to swap
        let two: Vec<_> = digraph_catalog(2, 2, false)
            .into_iter()
            .filter(|d| d.n() == 2)
            .collect();
        // m=0: 1, m=1: 1, m=2: {ab,ab}, {ab,ba} -> 2
        assert_eq!(two.len(), 4);
        // simple digraphs (no parallel arcs) on 3 vertices number 16
        let simple3 = digraph_catalog(3, 6, false)
            .into_iter()
            .filter(|d| d.n() == 3)
            .filter(|d| {
                let mut a = d.arcs().to_vec();
                a.dedup();
                a.len() == d.m()
            })
            .count();
        assert_eq!(simple3, 16);
    }

    #[test]
    fn representatives_are_pairwise_non_isomorphic() {
        let cat = digraph_catalog(3, 4, true);
        let perms = permutations(3);
        let canon = |d: &Digraph| {
            perms
                .iter()
                .filter(|p| p.len() == d.n() || d.n() == 3)
                .map(|p| {
                    let mut a: Vec<_> = d.arcs().iter().map(|&(t, h)| (p[t], p[h])).collect();
                    a.sort_unstable();
                    a
                })
                .min()
        };
        let mut seen = std::collections::HashSet::new();
        for d in cat.iter().filter(|d| d.n() == 3) {
            assert!(seen.insert(canon(d)));
        }
    }
}
