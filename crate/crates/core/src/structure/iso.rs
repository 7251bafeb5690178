use super::CayleyTable;

/// Isomorphism-invariant profile of one element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Profile {
    idempotent: bool,
    left_zero: bool,
    right_zero: bool,
    row_image: usize,
    column_image: usize,
    fixes_left: usize,
    fixes_right: usize,
    powers: (usize, usize),
}

fn profiles(t: &CayleyTable) -> Vec<Profile> {
    let m = t.order();
    let distinct = |values: &mut dyn Iterator<Item = usize>| {
        let mut seen = vec![false; m];
        values
            .filter(|&v| !std::mem::replace(&mut seen[v], true))
            .count()
    };
    (0..m)
        .map(|x| {
            // left-folded powers x, x², ... until a repeat: (index, period)
            let mut first_seen = vec![usize::MAX; m];
            let (mut p, mut k) = (x, 0);
            while first_seen[p] == usize::MAX {
                first_seen[p] = k;
                p = t.mul(p, x);
                k += 1;
            }
            Profile {
                idempotent: t.mul(x, x) == x,
                left_zero: (0..m).all(|y| t.mul(x, y) == x),
                right_zero: (0..m).all(|y| t.mul(y, x) == x),
                row_image: distinct(&mut (0..m).map(|y| t.mul(x, y))),
                column_image: distinct(&mut (0..m).map(|y| t.mul(y, x))),
                fixes_left: (0..m).filter(|&y| t.mul(x, y) == y).count(),
                fixes_right: (0..m).filter(|&y| t.mul(y, x) == y).count(),
                powers: (first_seen[p], k - first_seen[p]),
            }
        })
        .collect()
}

struct IsoSearch<'a> {
    a: &'a CayleyTable,
    b: &'a CayleyTable,
    pa: Vec<Profile>,
    pb: Vec<Profile>,
    forward: Vec<Option<usize>>,
    used: Vec<bool>,
    trail: Vec<usize>,
}

impl IsoSearch<'_> {
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match self.forward[x] {
                Some(z) if z == y => continue,
                Some(_) => return false,
                None if self.used[y] || self.pa[x] != self.pb[y] => return false,
                None => {}
            }
            self.forward[x] = Some(y);
            self.used[y] = true;
            self.trail.push(x);
            for k in 0..self.trail.len() {
                let u = self.trail[k];
                let v = self.forward[u].expect("trail holds mapped elements");
                queue.push((self.a.mul(x, u), self.b.mul(y, v)));
                queue.push((self.a.mul(u, x), self.b.mul(v, y)));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.trail.drain(mark..) {
            let y = self.forward[x].take().expect("trail holds mapped elements");
            self.used[y] = false;
        }
    }

    fn search(&mut self, order: &[usize]) -> bool {
        let Some(&x) = order.iter().find(|&&x| self.forward[x].is_none()) else {
            return true;
        };
        for y in 0..self.b.order() {
            if self.used[y] || self.pa[x] != self.pb[y] {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.search(order) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

/// A bijection `f` with `f(x·y) = f(x)·f(y)`, if one exists.
pub fn are_isomorphic(a: &CayleyTable, b: &CayleyTable) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let (pa, pb) = (profiles(a), profiles(b));
    let (mut sa, mut sb) = (pa.clone(), pb.clone());
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    // rarest profiles first
    let count = |p: &Profile| pa.iter().filter(|q| *q == p).count();
    let mut order: Vec<usize> = (0..a.order()).collect();
    order.sort_by_key(|&x| (count(&pa[x]), x));
    let m = a.order();
    let mut search = IsoSearch {
        a,
        b,
        pa,
        pb,
        forward: vec![None; m],
        used: vec![false; m],
        trail: Vec::new(),
    };
    search.search(&order).then(|| {
        search
            .forward
            .into_iter()
            .map(|y| y.expect("complete map"))
            .collect()
    })
}
