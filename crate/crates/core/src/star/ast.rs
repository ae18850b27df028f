use std::fmt;

/// A path atom of a star configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Atom<F> {
    /// `S` — one strand of the system's own scaling curve.
    SystemStrand,
    /// `B` — one Brownian path.
    Brownian,
    /// `P` — one self-avoiding walk (defined only at c = 0).
    Saw,
    /// `W(n)` — a packet of `n >= 0` mutually transparent Brownian paths;
    /// `n` need not be an integer.
    Packet(F),
    /// `G(x)` — a generic set carrying half-plane boundary dimension `x >= 0`.
    Generic(F),
}

/// A star configuration: atoms joined at a common vertex by mutual avoidance
/// (`^`, n-ary) or transparency (`v`, n-ary).
#[derive(Debug, Clone, PartialEq)]
pub enum StarExpr<F> {
    Atom(Atom<F>),
    Avoid(Vec<StarExpr<F>>),
    Overlap(Vec<StarExpr<F>>),
}

impl<F> StarExpr<F> {
    /// Joins children under mutual avoidance, flattening nested `Avoid` nodes
    /// so same-operator chains become one n-ary node.
    pub fn avoid(children: Vec<StarExpr<F>>) -> StarExpr<F> {
        Self::join(children, true)
    }

    /// Joins children under transparency, flattening nested `Overlap` nodes.
    pub fn overlap(children: Vec<StarExpr<F>>) -> StarExpr<F> {
        Self::join(children, false)
    }

    fn join(children: Vec<StarExpr<F>>, avoid: bool) -> StarExpr<F> {
        let mut flat = Vec::with_capacity(children.len());
        for child in children {
            match (avoid, child) {
                (true, StarExpr::Avoid(grand)) => flat.extend(grand),
                (false, StarExpr::Overlap(grand)) => flat.extend(grand),
                (_, other) => flat.push(other),
            }
        }
        debug_assert!(flat.len() >= 2, "operator nodes need at least two children");
        if avoid {
            StarExpr::Avoid(flat)
        } else {
            StarExpr::Overlap(flat)
        }
    }

    pub fn children(&self) -> &[StarExpr<F>] {
        match self {
            StarExpr::Atom(_) => &[],
            StarExpr::Avoid(c) | StarExpr::Overlap(c) => c,
        }
    }
}

impl<F: fmt::Display> fmt::Display for Atom<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::SystemStrand => write!(f, "S"),
            Atom::Brownian => write!(f, "B"),
            Atom::Saw => write!(f, "P"),
            Atom::Packet(n) => write!(f, "W({n})"),
            Atom::Generic(x) => write!(f, "G({x})"),
        }
    }
}

impl<F: fmt::Display> fmt::Display for StarExpr<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn node<F: fmt::Display>(
            expr: &StarExpr<F>,
            f: &mut fmt::Formatter<'_>,
            parent_op: Option<char>,
        ) -> fmt::Result {
            match expr {
                StarExpr::Atom(a) => write!(f, "{a}"),
                StarExpr::Avoid(kids) | StarExpr::Overlap(kids) => {
                    let op = if matches!(expr, StarExpr::Avoid(_)) { '^' } else { 'v' };
                    let parens = parent_op.is_some();
                    if parens {
                        write!(f, "(")?;
                    }
                    for (i, kid) in kids.iter().enumerate() {
                        if i > 0 {
                            write!(f, "{op}")?;
                        }
                        node(kid, f, Some(op))?;
                    }
                    if parens {
                        write!(f, ")")?;
                    }
                    Ok(())
                }
            }
        }
        node(self, f, None)
    }
}
