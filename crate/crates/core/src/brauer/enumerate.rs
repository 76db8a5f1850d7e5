use super::BrauerMorphism;

/// `(k)!! = k (k - 2) (k - 4) ...`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> u64 {
    if k <= 0 {
        return 1;
    }
    (1..=k as u64).rev().step_by(2).product()
}

/// All loop-free morphisms `[m] -> [n]`.
///
/// Order is lexicographic on the pairing: the smallest unmatched point is
/// matched first, to each candidate partner in increasing index order.
/// Returns an empty list when `m + n` is odd.
pub fn enumerate_loop_free(m: usize, n: usize) -> Vec<BrauerMorphism> {
    let size = m + n;
    if size % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(double_factorial(size as i64 - 1) as usize);
    let mut partner = vec![usize::MAX; size];
    fill(&mut partner, 0, &mut |p| out.push(BrauerMorphism::raw(m, n, p.to_vec(), 0)));
    out
}

fn fill(partner: &mut [usize], from: usize, emit: &mut impl FnMut(&[usize])) {
    let Some(first) = (from..partner.len()).find(|&i| partner[i] == usize::MAX) else {
        emit(partner);
        return;
    };
    for j in first + 1..partner.len() {
        if partner[j] != usize::MAX {
            continue;
        }
        partner[first] = j;
        partner[j] = first;
        fill(partner, first + 1, emit);
        partner[first] = usize::MAX;
        partner[j] = usize::MAX;
    }
}

/// Every morphism with `m + n <= max_size` and at most `max_loops` loops.
pub fn enumerate_with_loops(max_size: usize, max_loops: usize) -> Vec<BrauerMorphism> {
    let mut out = Vec::new();
    for size in (0..=max_size).step_by(2) {
        for m in 0..=size {
            for f in enumerate_loop_free(m, size - m) {
                out.extend((0..=max_loops).map(|k| f.with_loops(k)));
            }
        }
    }
    out
}
