//! Finite groups as dense multiplication tables.
//!
//! A group is built once (from permutation generators, from a subgroup of an
//! existing group, or as a semidirect product with Z/2) and then queried
//! through total lookup tables. Element `0` is always the identity, and the
//! element order is the canonical breadth-first discovery order over the
//! generators, so every element carries a canonical word in the original
//! generator names.
//!
//! The product convention is left-to-right: `mul(a, b)` means "apply `a`,
//! then `b`". Words like `g2*g5` therefore evaluate with `g2` acting first,
//! matching the group files under `fixtures/`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::GroupError;
use crate::perm::Perm;
use crate::word::Word;

/// Element index within a [`FiniteGroup`].
pub type El = u16;

pub const DEFAULT_GROUP_CAP: usize = 10_000;

#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<El>,
    inv: Vec<El>,
    elem_order: Vec<u32>,
    gen_ids: Vec<El>,
    gen_names: Vec<String>,
    gen_words: Vec<Word>,
    /// For each non-identity element `e`, the pair `(prev, j)` with
    /// `e = prev * gen[j]` along the breadth-first discovery tree.
    parent: Vec<Option<(El, usize)>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("generators", &self.gen_names)
            .finish()
    }
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = El> {
        (0..self.order as El).map(|e| e as El)
    }

    pub fn mul(&self, a: El, b: El) -> El {
        self.mul[a as usize * self.order + b as usize]
    }

    pub fn inv(&self, a: El) -> El {
        self.inv[a as usize]
    }

    /// `x * g * x^{-1}`.
    pub fn conj(&self, x: El, g: El) -> El {
        self.mul(self.mul(x, g), self.inv(x))
    }

    /// `a * b * a^{-1} * b^{-1}`.
    pub fn comm(&self, a: El, b: El) -> El {
        self.mul(
            self.mul(self.mul(a, b), self.inv(a)),
            self.inv(b),
        )
    }

    pub fn power(&self, g: El, k: i64) -> El {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut result: El = 0;
        for _ in 0..k.unsigned_abs() {
            result = self.mul(result, base);
        }
        result
    }

    pub fn element_order(&self, g: El) -> u32 {
        self.elem_order[g as usize]
    }

    pub fn generator_ids(&self) -> &[El] {
        &self.gen_ids
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    /// Canonical word for `e` over the original generator names, following
    /// the breadth-first discovery tree. The identity is the empty word `1`.
    pub fn word_for(&self, e: El) -> Word {
        let mut gens_rev = Vec::new();
        let mut cur = e;
        while let Some((prev, j)) = self.parent[cur as usize] {
            gens_rev.push(j);
            cur = prev;
        }
        let mut factors: Vec<(String, i64)> = Vec::new();
        for &j in gens_rev.iter().rev() {
            for (name, exp) in &self.gen_words[j].factors {
                match factors.last_mut() {
                    Some((last, e)) if last == name => *e += exp,
                    _ => factors.push((name.clone(), *exp)),
                }
            }
        }
        factors.retain(|&(_, e)| e != 0);
        Word { factors }
    }

    /// Evaluates a word over this group's generator names.
    pub fn evaluate(&self, word: &Word) -> Result<El, GroupError> {
        let mut result: El = 0;
        for (name, exp) in &word.factors {
            let j = self
                .gen_names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| GroupError::UnknownGenerator(name.clone()))?;
            let g = self.gen_ids[j];
            result = self.mul(result, self.power(g, *exp));
        }
        Ok(result)
    }

    pub fn evaluate_str(&self, word: &str) -> Result<El, GroupError> {
        self.evaluate(&Word::parse(word)?)
    }

    /// Builds a group as the closure of permutation generators, assigning
    /// element indices in breadth-first order. Fails once the closure
    /// exceeds `cap` elements.
    pub fn from_permutations(
        gens: &[(String, Perm)],
        cap: usize,
    ) -> Result<FiniteGroup, GroupError> {
        let degree = gens.first().map_or(1, |(_, p)| p.degree());
        for (name, p) in gens {
            if p.degree() != degree {
                return Err(GroupError::BadPermutation(format!(
                    "generator `{name}` acts on {} points, expected {degree}",
                    p.degree()
                )));
            }
        }
        let mut names_seen = std::collections::BTreeSet::new();
        for (name, _) in gens {
            if !names_seen.insert(name.clone()) {
                return Err(GroupError::BadFile(format!(
                    "duplicate generator name `{name}`"
                )));
            }
        }

        let mut perms: Vec<Perm> = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, El> = HashMap::new();
        index.insert(perms[0].clone(), 0);
        let mut parent: Vec<Option<(El, usize)>> = vec![None];
        let mut queue: VecDeque<El> = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for (j, (_, gp)) in gens.iter().enumerate() {
                let next = perms[e as usize].then(gp);
                if !index.contains_key(&next) {
                    if perms.len() >= cap {
                        return Err(GroupError::TooLarge { cap });
                    }
                    let id = perms.len() as El;
                    index.insert(next.clone(), id);
                    perms.push(next);
                    parent.push(Some((e, j)));
                    queue.push_back(id);
                }
            }
        }

        let order = perms.len();
        let mut mul = vec![0 as El; order * order];
        for a in 0..order {
            for b in 0..order {
                let p = perms[a].then(&perms[b]);
                mul[a * order + b] = index[&p];
            }
        }
        let gen_ids: Vec<El> = gens.iter().map(|(_, p)| index[p]).collect();
        let gen_names: Vec<String> = gens.iter().map(|(n, _)| n.clone()).collect();
        let gen_words: Vec<Word> = gen_names
            .iter()
            .map(|n| Word {
                factors: vec![(n.clone(), 1)],
            })
            .collect();
        Ok(Self::finish(mul, order, gen_ids, gen_names, gen_words, parent))
    }

    /// Parses the `fixtures/groups` file format:
    ///
    /// ```text
    /// # comment
    /// degree 48
    /// order 48            # optional; checked against the closure
    /// g1 = (1 2 3)(4 5)
    /// g2 = ()
    /// ```
    pub fn from_group_file(text: &str, cap: usize) -> Result<FiniteGroup, GroupError> {
        let mut degree: Option<usize> = None;
        let mut asserted_order: Option<usize> = None;
        let mut gens: Vec<(String, Perm)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |msg: String| GroupError::BadFile(format!("line {}: {msg}", lineno + 1));
            if let Some(rest) = line.strip_prefix("degree ") {
                if degree.is_some() {
                    return Err(at("duplicate `degree`".into()));
                }
                degree = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| at(format!("bad degree `{rest}`")))?,
                );
            } else if let Some(rest) = line.strip_prefix("order ") {
                if asserted_order.is_some() {
                    return Err(at("duplicate `order`".into()));
                }
                asserted_order = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| at(format!("bad order `{rest}`")))?,
                );
            } else if let Some((name, perm_str)) = line.split_once('=') {
                let name = name.trim().to_string();
                let degree =
                    degree.ok_or_else(|| at("generator before `degree` line".into()))?;
                let perm = Perm::parse_cycles(perm_str.trim(), degree)
                    .map_err(|e| at(format!("generator `{name}`: {e}")))?;
                gens.push((name, perm));
            } else {
                return Err(at(format!("unrecognized line `{line}`")));
            }
        }
        if degree.is_none() {
            return Err(GroupError::BadFile("missing `degree` line".into()));
        }
        if gens.is_empty() {
            return Err(GroupError::BadFile("no generators".into()));
        }
        let group = Self::from_permutations(&gens, cap)?;
        if let Some(n) = asserted_order {
            if n != group.order() {
                return Err(GroupError::OrderMismatch {
                    asserted: n,
                    actual: group.order(),
                });
            }
        }
        Ok(group)
    }

    /// Materializes the subgroup generated by words over this group's
    /// generators. Returns the subgroup together with the embedding into
    /// `self`. An empty word list yields the trivial subgroup.
    pub fn subgroup_from_words(
        &self,
        words: &[Word],
    ) -> Result<(FiniteGroup, GroupMap), GroupError> {
        let gens: Vec<El> = words
            .iter()
            .map(|w| self.evaluate(w))
            .collect::<Result<_, _>>()?;

        let mut to_parent: Vec<El> = vec![0];
        let mut sub_index: HashMap<El, El> = HashMap::from([(0, 0)]);
        let mut parent: Vec<Option<(El, usize)>> = vec![None];
        let mut queue: VecDeque<El> = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for (j, &g) in gens.iter().enumerate() {
                let next = self.mul(to_parent[e as usize], g);
                if !sub_index.contains_key(&next) {
                    let id = to_parent.len() as El;
                    sub_index.insert(next, id);
                    to_parent.push(next);
                    parent.push(Some((e, j)));
                    queue.push_back(id);
                }
            }
        }

        let order = to_parent.len();
        let mut mul = vec![0 as El; order * order];
        for a in 0..order {
            for b in 0..order {
                let p = self.mul(to_parent[a], to_parent[b]);
                mul[a * order + b] = sub_index[&p];
            }
        }
        let gen_ids: Vec<El> = gens.iter().map(|&g| sub_index[&g]).collect();
        let gen_names: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        let sub = Self::finish(mul, order, gen_ids, gen_names, words.to_vec(), parent);
        let map = GroupMap::from_full_images(&sub, self, to_parent)?;
        Ok((sub, map))
    }

    /// The set of elements generated by `seeds`, as sorted indices.
    pub fn subgroup_generated(&self, seeds: &[El]) -> Vec<El> {
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut queue: VecDeque<El> = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for &g in seeds {
                let next = self.mul(e, g);
                if !in_set[next as usize] {
                    in_set[next as usize] = true;
                    queue.push_back(next);
                }
            }
        }
        (0..self.order as El).filter(|&e| in_set[e as usize]).collect()
    }

    /// Conjugacy class of `g`, sorted; checks `|class| * |centralizer| = |G|`.
    pub fn conjugacy_class(&self, g: El) -> Vec<El> {
        let mut in_class = vec![false; self.order];
        let mut centralizer_size = 0usize;
        for x in self.elements() {
            let c = self.conj(x, g);
            in_class[c as usize] = true;
            if c == g {
                centralizer_size += 1;
            }
        }
        let class: Vec<El> = (0..self.order as El)
            .filter(|&e| in_class[e as usize])
            .collect();
        assert_eq!(
            class.len() * centralizer_size,
            self.order,
            "class equation violated at element {g}"
        );
        class
    }

    /// Centralizer of `g`, sorted; checks `|class| * |centralizer| = |G|`.
    pub fn centralizer(&self, g: El) -> Vec<El> {
        let mut cent = Vec::new();
        let mut class_size = 0usize;
        let mut in_class = vec![false; self.order];
        for x in self.elements() {
            if self.mul(x, g) == self.mul(g, x) {
                cent.push(x);
            }
            let c = self.conj(x, g);
            if !in_class[c as usize] {
                in_class[c as usize] = true;
                class_size += 1;
            }
        }
        assert_eq!(
            class_size * cent.len(),
            self.order,
            "class equation violated at element {g}"
        );
        cent
    }

    /// All conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<El>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for e in self.elements() {
            if seen[e as usize] {
                continue;
            }
            let class = self.conjugacy_class(e);
            for &c in &class {
                seen[c as usize] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Size of each element's conjugacy class.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.order];
        for class in self.conjugacy_classes() {
            for &e in &class {
                sizes[e as usize] = class.len();
            }
        }
        sizes
    }

    /// All automorphisms `f` with `f * f = id` (the identity map included),
    /// in lexicographic order of generator images. Backtracks over candidate
    /// generator images filtered by element order and class size, extending
    /// each partial assignment over the generated span and pruning on the
    /// first violated product.
    pub fn involutory_automorphisms(&self) -> Vec<GroupMap> {
        let class_sizes = self.class_sizes();
        let candidates: Vec<Vec<El>> = self
            .gen_ids
            .iter()
            .map(|&g| {
                self.elements()
                    .filter(|&c| {
                        self.elem_order[c as usize] == self.elem_order[g as usize]
                            && class_sizes[c as usize] == class_sizes[g as usize]
                    })
                    .collect()
            })
            .collect();

        struct Search<'a> {
            group: &'a FiniteGroup,
            candidates: &'a [Vec<El>],
            found: Vec<GroupMap>,
        }
        struct Partial {
            img: Vec<Option<El>>,
            used: Vec<bool>,
            span: Vec<El>,
        }
        impl Search<'_> {
            /// Extends `p` so its span is closed under the first `k` generators,
            /// keeping the map injective and multiplicative. Returns false if
            /// that fails.
            fn close_span(&self, p: &mut Partial, k: usize) -> bool {
                let gr = self.group;
                let mut head = 0;
                while head < p.span.len() {
                    let e = p.span[head];
                    head += 1;
                    for j in 0..k {
                        let g = gr.gen_ids[j];
                        let next = gr.mul(e, g);
                        let img_next =
                            gr.mul(p.img[e as usize].unwrap(), p.img[g as usize].unwrap());
                        match p.img[next as usize] {
                            Some(existing) => {
                                if existing != img_next {
                                    return false;
                                }
                            }
                            None => {
                                if p.used[img_next as usize] {
                                    return false;
                                }
                                p.img[next as usize] = Some(img_next);
                                p.used[img_next as usize] = true;
                                p.span.push(next);
                            }
                        }
                    }
                }
                true
            }

            fn descend(&mut self, p: &Partial, k: usize) {
                let gr = self.group;
                if k == gr.gen_ids.len() {
                    if p.span.len() != gr.order {
                        return;
                    }
                    let img: Vec<El> = p.img.iter().map(|x| x.unwrap()).collect();
                    if gr
                        .elements()
                        .all(|e| img[img[e as usize] as usize] == e)
                    {
                        self.found.push(GroupMap {
                            images: img,
                            src_order: gr.order,
                            dst_order: gr.order,
                        });
                    }
                    return;
                }
                let g = gr.gen_ids[k];
                for &c in &self.candidates[k] {
                    let mut q = Partial {
                        img: p.img.clone(),
                        used: p.used.clone(),
                        span: p.span.clone(),
                    };
                    match q.img[g as usize] {
                        Some(existing) => {
                            // A generator already inside the span of earlier
                            // generators has its image forced.
                            if existing != c {
                                continue;
                            }
                        }
                        None => {
                            if q.used[c as usize] {
                                continue;
                            }
                            q.img[g as usize] = Some(c);
                            q.used[c as usize] = true;
                            q.span.push(g);
                        }
                    }
                    if self.close_span(&mut q, k + 1) {
                        self.descend(&q, k + 1);
                    }
                }
            }
        }

        let mut img = vec![None; self.order];
        img[0] = Some(0);
        let mut used = vec![false; self.order];
        used[0] = true;
        let root = Partial {
            img,
            used,
            span: vec![0],
        };
        let mut search = Search {
            group: self,
            candidates: &candidates,
            found: Vec::new(),
        };
        search.descend(&root, 0);
        search.found
    }

    /// The semidirect product of `self` with Z/2 acting through the
    /// involutory automorphism `twist`: pairs `(h, e)` multiply as
    /// `(h, e) * (h', e') = (h * twist^e(h'), e + e')`, indexed as
    /// `h + e * order`. Returns the product together with the embedding
    /// `h -> (h, 0)`; the new generator over the base is named `t`.
    pub fn semidirect_z2(&self, twist: &GroupMap) -> Result<(FiniteGroup, GroupMap), GroupError> {
        assert_eq!(twist.src_order, self.order);
        assert_eq!(twist.dst_order, self.order);
        for e in self.elements() {
            assert_eq!(
                twist.apply(twist.apply(e)),
                e,
                "twist is not involutory at element {e}"
            );
        }
        let n = self.order;
        let order = 2 * n;
        let encode = |h: El, eps: usize| -> usize { h as usize + eps * n };
        let mut mul = vec![0 as El; order * order];
        for a_eps in 0..2 {
            for a_h in 0..n as El {
                for b_eps in 0..2 {
                    for b_h in 0..n as El {
                        let acted = if a_eps == 1 { twist.apply(b_h) } else { b_h };
                        let h = self.mul(a_h, acted);
                        let eps = (a_eps + b_eps) % 2;
                        mul[encode(a_h, a_eps) * order + encode(b_h, b_eps)] =
                            encode(h, eps) as El;
                    }
                }
            }
        }
        let mut gen_ids: Vec<El> = self.gen_ids.clone();
        gen_ids.push(encode(0, 1) as El);
        let mut gen_names = self.gen_names.clone();
        gen_names.push("t".to_string());
        let mut gen_words = self.gen_words.clone();
        gen_words.push(Word {
            factors: vec![("t".to_string(), 1)],
        });
        let parent = bfs_parents(&mul, order, &gen_ids)
            .ok_or_else(|| GroupError::BadFile("semidirect generators do not span".into()))?;
        let product = Self::finish(mul, order, gen_ids, gen_names, gen_words, parent);
        let embedding =
            GroupMap::from_full_images(self, &product, (0..n as El).collect())?;
        Ok((product, embedding))
    }

    fn finish(
        mul: Vec<El>,
        order: usize,
        gen_ids: Vec<El>,
        gen_names: Vec<String>,
        gen_words: Vec<Word>,
        parent: Vec<Option<(El, usize)>>,
    ) -> FiniteGroup {
        let mut inv = vec![0 as El; order];
        for a in 0..order {
            let row = &mul[a * order..(a + 1) * order];
            inv[a] = row.iter().position(|&p| p == 0).unwrap() as El;
        }
        let mut elem_order = vec![0u32; order];
        for g in 0..order as El {
            let mut k = 1u32;
            let mut p = g;
            while p != 0 {
                p = mul[p as usize * order + g as usize];
                k += 1;
            }
            elem_order[g as usize] = k;
        }
        FiniteGroup {
            order,
            mul,
            inv,
            elem_order,
            gen_ids,
            gen_names,
            gen_words,
            parent,
        }
    }
}

fn bfs_parents(mul: &[El], order: usize, gen_ids: &[El]) -> Option<Vec<Option<(El, usize)>>> {
    let mut parent: Vec<Option<(El, usize)>> = vec![None; order];
    let mut seen = vec![false; order];
    seen[0] = true;
    let mut reached = 1usize;
    let mut queue: VecDeque<El> = VecDeque::from([0]);
    while let Some(e) = queue.pop_front() {
        for (j, &g) in gen_ids.iter().enumerate() {
            let next = mul[e as usize * order + g as usize];
            if !seen[next as usize] {
                seen[next as usize] = true;
                reached += 1;
                parent[next as usize] = Some((e, j));
                queue.push_back(next);
            }
        }
    }
    (reached == order).then_some(parent)
}

/// A total map between two groups, stored as the image of every element.
#[derive(Clone, Debug)]
pub struct GroupMap {
    images: Vec<El>,
    src_order: usize,
    dst_order: usize,
}

impl GroupMap {
    /// Wraps a full image table, checking it is a homomorphism.
    pub fn from_full_images(
        src: &FiniteGroup,
        dst: &FiniteGroup,
        images: Vec<El>,
    ) -> Result<GroupMap, GroupError> {
        assert_eq!(images.len(), src.order());
        for a in src.elements() {
            for &g in src.generator_ids() {
                let lhs = images[src.mul(a, g) as usize];
                let rhs = dst.mul(images[a as usize], images[g as usize]);
                if lhs != rhs {
                    return Err(GroupError::NotHomomorphism {
                        witness: format!("{} * {}", src.word_for(a), src.word_for(g)),
                    });
                }
            }
        }
        Ok(GroupMap {
            images,
            src_order: src.order(),
            dst_order: dst.order(),
        })
    }

    /// Extends generator images to the whole source group along its
    /// discovery tree, then checks the result is a homomorphism.
    pub fn from_generator_images(
        src: &FiniteGroup,
        dst: &FiniteGroup,
        gen_images: &[El],
    ) -> Result<GroupMap, GroupError> {
        assert_eq!(gen_images.len(), src.generator_ids().len());
        let mut images = vec![0 as El; src.order()];
        for e in discovery_order(src) {
            if let Some((prev, j)) = src.parent[e as usize] {
                images[e as usize] = dst.mul(images[prev as usize], gen_images[j]);
            }
        }
        Self::from_full_images(src, dst, images)
    }

    pub fn apply(&self, e: El) -> El {
        self.images[e as usize]
    }

    pub fn src_order(&self) -> usize {
        self.src_order
    }

    pub fn dst_order(&self) -> usize {
        self.dst_order
    }

    /// Checks injectivity, naming a colliding pair on failure.
    pub fn check_injective(&self, src: &FiniteGroup) -> Result<(), GroupError> {
        let mut seen: Vec<Option<El>> = vec![None; self.dst_order];
        for e in src.elements() {
            let im = self.images[e as usize];
            if let Some(other) = seen[im as usize] {
                return Err(GroupError::NotInjective {
                    a: src.word_for(other).to_string(),
                    b: src.word_for(e).to_string(),
                });
            }
            seen[im as usize] = Some(e);
        }
        Ok(())
    }

    /// Partial inverse: for each target element, its unique preimage if any.
    pub fn preimages(&self) -> Vec<Option<El>> {
        let mut pre: Vec<Option<El>> = vec![None; self.dst_order];
        for (e, &im) in self.images.iter().enumerate() {
            pre[im as usize] = Some(e as El);
        }
        pre
    }
}

fn discovery_order(g: &FiniteGroup) -> Vec<El> {
    // Parents were assigned in breadth-first order, so parent indices are
    // always smaller than child indices only for the permutation/subgroup
    // constructors; a table rebuild may permute them. Walk indices in an
    // order that respects the tree.
    let mut order: Vec<El> = Vec::with_capacity(g.order());
    let mut done = vec![false; g.order()];
    fn visit(g: &FiniteGroup, e: El, done: &mut [bool], out: &mut Vec<El>) {
        if done[e as usize] {
            return;
        }
        if let Some((prev, _)) = g.parent[e as usize] {
            visit(g, prev, done, out);
        }
        done[e as usize] = true;
        out.push(e);
    }
    for e in g.elements() {
        visit(g, e, &mut done, &mut order);
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetric_3() -> FiniteGroup {
        let gens = vec![
            ("a".to_string(), Perm::parse_cycles("(1 2)", 3).unwrap()),
            ("b".to_string(), Perm::parse_cycles("(1 2 3)", 3).unwrap()),
        ];
        FiniteGroup::from_permutations(&gens, DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn builds_symmetric_group() {
        let g = symmetric_3();
        assert_eq!(g.order(), 6);
        let orders: Vec<u32> = g.elements().map(|e| g.element_order(e)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 3);
        assert_eq!(orders.iter().filter(|&&o| o == 3).count(), 2);
        for e in g.elements() {
            assert_eq!(g.mul(e, g.inv(e)), 0);
            let w = g.word_for(e);
            assert_eq!(g.evaluate(&w).unwrap(), e);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let gens = vec![(
            "a".to_string(),
            Perm::parse_cycles("(1 2 3 4 5 6 7)", 7).unwrap(),
        )];
        let err = FiniteGroup::from_permutations(&gens, 5).unwrap_err();
        assert!(matches!(err, GroupError::TooLarge { cap: 5 }));
    }

    #[test]
    fn group_file_parses_and_checks_order() {
        let text = "# sample\ndegree 3\norder 6\ng1 = (1 2)\ng2 = (1 2 3)\n";
        let g = FiniteGroup::from_group_file(text, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.evaluate_str("g1*g1").unwrap(), 0);

        let bad = "degree 3\norder 5\ng1 = (1 2)\ng2 = (1 2 3)\n";
        assert!(matches!(
            FiniteGroup::from_group_file(bad, DEFAULT_GROUP_CAP),
            Err(GroupError::OrderMismatch {
                asserted: 5,
                actual: 6
            })
        ));
    }

    #[test]
    fn left_to_right_convention_in_words() {
        let g = symmetric_3();
        // (1 2) then (1 2 3): point 1 -> 2 -> 3, which is the 3-cycle (1 3 2)...
        // independent check: a*b must differ from b*a in S3.
        let ab = g.evaluate_str("a*b").unwrap();
        let ba = g.evaluate_str("b*a").unwrap();
        assert_ne!(ab, ba);
        assert_eq!(g.element_order(ab), 2);
    }

    #[test]
    fn subgroup_and_embedding() {
        let g = symmetric_3();
        let (sub, emb) = g
            .subgroup_from_words(&[Word::parse("b").unwrap()])
            .unwrap();
        assert_eq!(sub.order(), 3);
        emb.check_injective(&sub).unwrap();
        for a in sub.elements() {
            for b in sub.elements() {
                assert_eq!(emb.apply(sub.mul(a, b)), g.mul(emb.apply(a), emb.apply(b)));
            }
        }
        let (trivial, _) = g.subgroup_from_words(&[]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.word_for(0).to_string(), "1");
    }

    #[test]
    fn classes_and_centralizers() {
        let g = symmetric_3();
        let transposition = g.evaluate_str("a").unwrap();
        assert_eq!(g.conjugacy_class(transposition).len(), 3);
        assert_eq!(g.centralizer(transposition).len(), 2);
        assert_eq!(g.conjugacy_classes().len(), 3);
        let sizes = g.class_sizes();
        assert_eq!(sizes[0], 1);
    }

    #[test]
    fn subgroup_generated_matches_closure() {
        let g = symmetric_3();
        let rot = g.evaluate_str("b").unwrap();
        let set = g.subgroup_generated(&[rot]);
        assert_eq!(set.len(), 3);
        assert!(set.contains(&0));
    }

    #[test]
    fn involutory_automorphisms_of_s3() {
        // Aut(S3) = S3; its involutory elements are the identity and the
        // three transpositions, so four maps in total.
        let g = symmetric_3();
        let auts = g.involutory_automorphisms();
        assert_eq!(auts.len(), 4);
        // Identity map present.
        assert!(auts
            .iter()
            .any(|m| g.elements().all(|e| m.apply(e) == e)));
        for m in &auts {
            for a in g.elements() {
                for b in g.elements() {
                    assert_eq!(m.apply(g.mul(a, b)), g.mul(m.apply(a), m.apply(b)));
                }
                assert_eq!(m.apply(m.apply(a)), a);
            }
        }
    }

    #[test]
    fn semidirect_with_inversion_gives_dihedral() {
        // Z/6 twisted by inversion is the dihedral group of order 12.
        let gens = vec![(
            "r".to_string(),
            Perm::parse_cycles("(1 2 3 4 5 6)", 6).unwrap(),
        )];
        let c6 = FiniteGroup::from_permutations(&gens, DEFAULT_GROUP_CAP).unwrap();
        let inversion = GroupMap::from_full_images(
            &c6,
            &c6,
            c6.elements().map(|e| c6.inv(e)).collect(),
        )
        .unwrap();
        let (d12, emb) = c6.semidirect_z2(&inversion).unwrap();
        assert_eq!(d12.order(), 12);
        emb.check_injective(&c6).unwrap();
        let t = d12.evaluate_str("t").unwrap();
        assert_eq!(d12.element_order(t), 2);
        let r = d12.evaluate_str("r").unwrap();
        // t r t^{-1} = r^{-1}
        assert_eq!(d12.conj(t, r), d12.inv(r));
        // Every element outside the base subgroup is an involution.
        for e in d12.elements() {
            if e as usize >= 6 {
                assert_eq!(d12.element_order(e), 2);
            }
        }
        assert_eq!(d12.word_for(t).to_string(), "t");
    }

    #[test]
    fn generator_image_maps_verify() {
        let g = symmetric_3();
        let a = g.evaluate_str("a").unwrap();
        let b = g.evaluate_str("b").unwrap();
        // Conjugation by `a` is an automorphism sending a -> a, b -> aba.
        let aba = g.conj(a, b);
        let m = GroupMap::from_generator_images(&g, &g, &[a, aba]).unwrap();
        for x in g.elements() {
            assert_eq!(m.apply(x), g.conj(a, x));
        }
        // b -> b^2 does not extend to a homomorphism together with a -> b.
        assert!(GroupMap::from_generator_images(&g, &g, &[b, b]).is_err());
    }
}
