//! Pictures and tiling systems. Membership works row by row: two rows
//! are compatible when every 2x2 window of the framed rows is a tile.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::letter::{check_word, format_word, Alphabet, Letter, Word};

/// Top-left, top-right, bottom-left, bottom-right.
pub type Tile = [Letter; 4];

pub fn tile(tl: &str, tr: &str, bl: &str, br: &str) -> Tile {
    [Letter::new(tl), Letter::new(tr), Letter::new(bl), Letter::new(br)]
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Picture {
    rows: Vec<Word>,
}

impl Picture {
    /// Rows must be nonempty and of equal nonzero width.
    pub fn new(rows: Vec<Word>) -> Result<Picture> {
        let m = rows.first().map(Vec::len).unwrap_or(0);
        if m == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::Input("a picture needs n, m >= 1 and rows of equal width".into()));
        }
        Ok(Picture { rows })
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Letter {
        &self.rows[i][j]
    }

    pub fn column(&self, j: usize) -> Word {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn frontier(&self) -> Word {
        self.rows[0].clone()
    }

    /// Surrounds the picture with a ring of `frame`.
    pub fn border(&self, frame: &Letter) -> Result<Picture> {
        if self.rows.iter().flatten().any(|l| l == frame) {
            return Err(Error::Input(format!("frame symbol {frame} occurs in the picture")));
        }
        let m = self.width();
        let edge = vec![frame.clone(); m + 2];
        let mut rows = vec![edge.clone()];
        for r in &self.rows {
            let mut row = vec![frame.clone()];
            row.extend(r.iter().cloned());
            row.push(frame.clone());
            rows.push(row);
        }
        rows.push(edge);
        Ok(Picture { rows })
    }

    /// The set of 2x2 sub-pictures.
    pub fn tiles(&self) -> Result<BTreeSet<Tile>> {
        if self.height() < 2 || self.width() < 2 {
            return Err(Error::Input("tiles need a picture of size at least 2x2".into()));
        }
        let mut out = BTreeSet::new();
        for i in 0..self.height() - 1 {
            for j in 0..self.width() - 1 {
                out.insert([
                    self.rows[i][j].clone(),
                    self.rows[i][j + 1].clone(),
                    self.rows[i + 1][j].clone(),
                    self.rows[i + 1][j + 1].clone(),
                ]);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Picture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            f.write_str(&format_word(r))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TilingSystem {
    pub gamma: Alphabet,
    pub sigma: Alphabet,
    pub frame: Letter,
    pub tiles: BTreeSet<Tile>,
    // (tl, tr, bl) -> possible br
    index: HashMap<(Letter, Letter, Letter), Vec<Letter>>,
}

impl TilingSystem {
    pub fn new(gamma: Alphabet, sigma: Alphabet, frame: Letter, tiles: BTreeSet<Tile>) -> Result<TilingSystem> {
        if !sigma.is_subset(&gamma) {
            return Err(Error::Input("input alphabet must be contained in the work alphabet".into()));
        }
        if gamma.contains(&frame) {
            return Err(Error::Input(format!("frame symbol {frame} belongs to the work alphabet")));
        }
        for t in &tiles {
            if let Some(l) = t.iter().find(|l| **l != frame && !gamma.contains(*l)) {
                return Err(Error::Input(format!("tile letter {l} is neither in the work alphabet nor the frame")));
            }
        }
        let mut index: HashMap<(Letter, Letter, Letter), Vec<Letter>> = HashMap::new();
        for [a, b, c, d] in &tiles {
            index.entry((a.clone(), b.clone(), c.clone())).or_default().push(d.clone());
        }
        Ok(TilingSystem { gamma, sigma, frame, tiles, index })
    }

    pub fn has_tile(&self, t: &Tile) -> bool {
        self.tiles.contains(t)
    }

    fn padded(&self, r: &[Letter]) -> Word {
        let mut p = Vec::with_capacity(r.len() + 2);
        p.push(self.frame.clone());
        p.extend(r.iter().cloned());
        p.push(self.frame.clone());
        p
    }

    pub fn accepts_picture(&self, p: &Picture) -> bool {
        if p.rows.iter().flatten().any(|l| !self.gamma.contains(l)) {
            return false;
        }
        match p.border(&self.frame).and_then(|b| b.tiles()) {
            Ok(ts) => ts.is_subset(&self.tiles),
            Err(_) => false,
        }
    }

    fn rows_ok(&self, upper: &[Letter], lower: &[Letter]) -> bool {
        upper.windows(2).zip(lower.windows(2)).all(|(u, l)| {
            self.tiles.contains(&[u[0].clone(), u[1].clone(), l[0].clone(), l[1].clone()])
        })
    }

    /// A row may start a picture when its windows with the frame row
    /// above are all tiles.
    pub fn top_ok(&self, r: &[Letter]) -> bool {
        let p = self.padded(r);
        self.rows_ok(&vec![self.frame.clone(); p.len()], &p)
    }

    pub fn bottom_ok(&self, r: &[Letter]) -> bool {
        let p = self.padded(r);
        self.rows_ok(&p, &vec![self.frame.clone(); p.len()])
    }

    /// All rows that may follow `r` inside a picture, built left to right.
    pub fn successors(&self, r: &[Letter]) -> Vec<Word> {
        let up = self.padded(r);
        let m = r.len();
        let mut out = Vec::new();
        let mut partial: Vec<Word> = vec![vec![self.frame.clone()]];
        for j in 0..=m {
            let mut next = Vec::new();
            for s in partial {
                let key = (up[j].clone(), up[j + 1].clone(), s[j].clone());
                if let Some(brs) = self.index.get(&key) {
                    for d in brs {
                        let ok = if j == m { *d == self.frame } else { *d != self.frame };
                        if ok {
                            let mut s2 = s.clone();
                            s2.push(d.clone());
                            next.push(s2);
                        }
                    }
                }
            }
            partial = next;
        }
        for s in partial {
            out.push(s[1..=m].to_vec());
        }
        out.sort();
        out.dedup();
        out
    }

    fn check_input(&self, w: &[Letter]) -> Result<()> {
        check_word(w, &self.sigma)?;
        if w.is_empty() {
            return Err(Error::Input("tiling systems only describe nonempty words".into()));
        }
        Ok(())
    }

    /// Smallest accepted picture with frontier `w`, by breadth-first row
    /// search with a visited set.
    pub fn min_picture(&self, w: &[Letter]) -> Result<Option<Picture>> {
        self.check_input(w)?;
        if !self.top_ok(w) {
            return Ok(None);
        }
        let mut parent: HashMap<Word, Option<Word>> = HashMap::from([(w.to_vec(), None)]);
        let mut queue = VecDeque::from([w.to_vec()]);
        while let Some(r) = queue.pop_front() {
            if self.bottom_ok(&r) {
                let mut rows = vec![r.clone()];
                let mut cur = r;
                while let Some(Some(p)) = parent.get(&cur) {
                    rows.push(p.clone());
                    cur = p.clone();
                }
                rows.reverse();
                return Ok(Some(Picture { rows }));
            }
            for s in self.successors(&r) {
                if !parent.contains_key(&s) {
                    parent.insert(s.clone(), Some(r.clone()));
                    queue.push_back(s);
                }
            }
        }
        Ok(None)
    }

    pub fn member(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.min_picture(w)?.is_some())
    }

    pub fn min_height(&self, w: &[Letter]) -> Result<Option<usize>> {
        Ok(self.min_picture(w)?.map(|p| p.height()))
    }

    /// Accepted words of length `1..=max_len`.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        let sigma: Vec<Letter> = self.sigma.iter().cloned().collect();
        let mut out = Vec::new();
        let mut layer: Vec<Word> = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for a in &sigma {
                    let mut w2 = w.clone();
                    w2.push(a.clone());
                    next.push(w2);
                }
            }
            for w in &next {
                if self.member(w).unwrap_or(false) {
                    out.push(w.clone());
                }
            }
            layer = next;
        }
        out
    }

    /// Number of accepted pictures with frontier `w` and height at most
    /// `max_height`.
    pub fn count_pictures(&self, w: &[Letter], max_height: usize) -> Result<u128> {
        self.check_input(w)?;
        if !self.top_ok(w) || max_height == 0 {
            return Ok(0);
        }
        let mut total: u128 = 0;
        let mut layer: HashMap<Word, u128> = HashMap::from([(w.to_vec(), 1)]);
        for h in 1..=max_height {
            for (r, c) in &layer {
                if self.bottom_ok(r) {
                    total = total.saturating_add(*c);
                }
            }
            if h == max_height {
                break;
            }
            let mut next: HashMap<Word, u128> = HashMap::new();
            for (r, c) in &layer {
                for s in self.successors(r) {
                    let e = next.entry(s).or_insert(0);
                    *e = e.saturating_add(*c);
                }
            }
            layer = next;
        }
        Ok(total)
    }

    /// Bounded determinism: for every width up to `max_width` and every
    /// row reachable from a frontier row over the input alphabet, at most
    /// one successor row exists. The closing frame row is not a successor.
    pub fn det_probe(&self, max_width: usize) -> bool {
        let sigma: Vec<Letter> = self.sigma.iter().cloned().collect();
        let mut starts: Vec<Word> = vec![Vec::new()];
        for _ in 1..=max_width {
            starts = starts
                .iter()
                .flat_map(|w| {
                    sigma.iter().map(move |a| {
                        let mut w2 = w.clone();
                        w2.push(a.clone());
                        w2
                    })
                })
                .collect();
            let mut seen: BTreeSet<Word> = BTreeSet::new();
            let mut stack: Vec<Word> = starts.iter().filter(|w| self.top_ok(w)).cloned().collect();
            while let Some(r) = stack.pop() {
                if !seen.insert(r.clone()) {
                    continue;
                }
                let succ = self.successors(&r);
                if succ.len() > 1 {
                    return false;
                }
                stack.extend(succ);
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::letter::{alphabet, letter, word};

    #[test]
    fn border_and_tiles() {
        let p = Picture::new(vec![word("a")]).unwrap();
        let b = p.border(&letter("#")).unwrap();
        assert_eq!((b.height(), b.width()), (3, 3));
        let ts = b.tiles().unwrap();
        assert_eq!(ts.len(), 4);
        assert!(ts.iter().all(|t| t.iter().filter(|l| l.as_str() == "a").count() == 1));
        assert!(p.tiles().is_err());
        assert!(Picture::new(vec![]).is_err());
        assert!(Picture::new(vec![word("ab"), word("a")]).is_err());
    }

    #[test]
    fn ambiguous_bottom_right() {
        let g = alphabet(["a", "b"]);
        let mut tiles = BTreeSet::new();
        // a single row of a's may be followed by a row of a's or of b's
        for t in [
            tile("#", "#", "#", "a"),
            tile("#", "#", "a", "a"),
            tile("#", "#", "a", "#"),
            tile("#", "a", "#", "a"),
            tile("#", "a", "#", "b"),
            tile("a", "a", "a", "a"),
            tile("a", "a", "b", "b"),
            tile("a", "#", "a", "#"),
            tile("a", "#", "b", "#"),
        ] {
            tiles.insert(t);
        }
        let s = TilingSystem::new(g.clone(), alphabet(["a"]), letter("#"), tiles).unwrap();
        assert_eq!(s.successors(&word("aa")).len(), 2);
        assert!(!s.det_probe(2));
    }
}
