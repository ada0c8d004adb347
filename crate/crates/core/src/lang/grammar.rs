//! The concept grammar: six nonterminals and their forty productions, plus
//! per-production generation weights.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::features::{Attribute, FillClass, ShapeClass, Transform};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Nonterminal {
    /// Rule: a side selector applied to a sentence.
    R,
    /// Sentence: a truth-valued test on one scene.
    S,
    /// A set of objects.
    L,
    /// A numerical attribute.
    A,
    /// A pixel transform.
    T,
    /// A small count.
    N,
}

impl Nonterminal {
    pub const ALL: [Nonterminal; 6] = [
        Nonterminal::R,
        Nonterminal::S,
        Nonterminal::L,
        Nonterminal::A,
        Nonterminal::T,
        Nonterminal::N,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Productions of this nonterminal in table order.
    pub fn productions(self) -> &'static [Production] {
        use Production::*;
        match self {
            Nonterminal::R => &[Left, Right],
            Nonterminal::S => &[
                Exists, Exactly, EqualNum, More, GreaterLA, GreaterLLA, MoreSimLA, MoreSimLLA,
            ],
            Nonterminal::L => &[
                Cap, Cup, SetMinus, Inside, Contains, Aligned, Get, Solid, Outline, Big, Small, High, Low, Figures,
                Circles, Triangles, Rectangles,
            ],
            Nonterminal::A => &[
                XPos,
                YPos,
                Distance,
                Orientation,
                NCorners,
                Color,
                Size,
                Compactness,
                Convexity,
                Elongation,
            ],
            Nonterminal::T => &[Hulls, Holes],
            Nonterminal::N => &[One, Two, Three, Four],
        }
    }
}

impl fmt::Display for Nonterminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Which side of the problem a rule describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "LEFT",
            Side::Right => "RIGHT",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Production {
    Left,
    Right,
    Exists,
    Exactly,
    EqualNum,
    More,
    GreaterLA,
    GreaterLLA,
    MoreSimLA,
    MoreSimLLA,
    Cap,
    Cup,
    SetMinus,
    Inside,
    Contains,
    Aligned,
    Get,
    Solid,
    Outline,
    Big,
    Small,
    High,
    Low,
    Figures,
    Circles,
    Triangles,
    Rectangles,
    XPos,
    YPos,
    Distance,
    Orientation,
    NCorners,
    Color,
    Size,
    Compactness,
    Convexity,
    Elongation,
    Hulls,
    Holes,
    One,
    Two,
    Three,
    Four,
}

/// Number of productions in the grammar.
pub const PRODUCTIONS: usize = 43;

impl Production {
    pub fn all() -> impl Iterator<Item = Production> {
        Nonterminal::ALL
            .into_iter()
            .flat_map(|nt| nt.productions().iter().copied())
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn nonterminal(self) -> Nonterminal {
        use Production::*;
        match self {
            Left | Right => Nonterminal::R,
            Exists | Exactly | EqualNum | More | GreaterLA | GreaterLLA | MoreSimLA | MoreSimLLA => Nonterminal::S,
            Cap | Cup | SetMinus | Inside | Contains | Aligned | Get | Solid | Outline | Big | Small | High | Low
            | Figures | Circles | Triangles | Rectangles => Nonterminal::L,
            XPos | YPos | Distance | Orientation | NCorners | Color | Size | Compactness | Convexity | Elongation => {
                Nonterminal::A
            }
            Hulls | Holes => Nonterminal::T,
            One | Two | Three | Four => Nonterminal::N,
        }
    }

    /// Position among the productions of its nonterminal.
    pub fn slot(self) -> usize {
        self.nonterminal()
            .productions()
            .iter()
            .position(|&p| p == self)
            .expect("production listed under its nonterminal")
    }

    /// Argument nonterminals, in order.
    pub fn children(self) -> &'static [Nonterminal] {
        use Nonterminal as Nt;
        use Production::*;
        match self {
            Left | Right => &[Nt::S],
            Exists => &[Nt::L],
            Exactly => &[Nt::N, Nt::L],
            EqualNum | More => &[Nt::L, Nt::L],
            GreaterLA | MoreSimLA => &[Nt::L, Nt::A],
            GreaterLLA | MoreSimLLA => &[Nt::L, Nt::L, Nt::A],
            Cap | Cup | SetMinus => &[Nt::L, Nt::L],
            Inside | Contains | Aligned | Solid | Outline | Big | Small => &[Nt::L],
            Get => &[Nt::L, Nt::T],
            High | Low => &[Nt::L, Nt::A],
            _ => &[],
        }
    }

    pub fn arity(self) -> usize {
        self.children().len()
    }

    pub fn name(self) -> &'static str {
        use Production::*;
        match self {
            Left => "LEFT",
            Right => "RIGHT",
            Exists => "EXISTS",
            Exactly => "EXACTLY",
            EqualNum => "EQUALNUM",
            More => "MORE",
            GreaterLA => "GREATERLA",
            GreaterLLA => "GREATERLLA",
            MoreSimLA => "MORESIMLA",
            MoreSimLLA => "MORESIMLLA",
            Cap => "CAP",
            Cup => "CUP",
            SetMinus => "SETMINUS",
            Inside => "INSIDE",
            Contains => "CONTAINS",
            Aligned => "ALIGNED",
            Get => "GET",
            Solid => "SOLID",
            Outline => "OUTLINE",
            Big => "BIG",
            Small => "SMALL",
            High => "HIGH",
            Low => "LOW",
            Figures => "FIGURES",
            Circles => "CIRCLES",
            Triangles => "TRIANGLES",
            Rectangles => "RECTANGLES",
            XPos => "XPOS",
            YPos => "YPOS",
            Distance => "DISTANCE",
            Orientation => "ORIENTATION",
            NCorners => "NCORNERS",
            Color => "COLOR",
            Size => "SIZE",
            Compactness => "COMPACTNESS",
            Convexity => "CONVEXITY",
            Elongation => "ELONGATION",
            Hulls => "HULLS",
            Holes => "HOLES",
            One => "1",
            Two => "2",
            Three => "3",
            Four => "4",
        }
    }

    /// Looks a functor up by name, case-insensitively. `OBJECTS` is accepted
    /// for `FIGURES` and `GREATER` for `GREATERLLA`.
    pub fn from_name(name: &str) -> Option<Production> {
        let upper = name.to_ascii_uppercase();
        match upper.as_str() {
            "OBJECTS" => return Some(Production::Figures),
            "GREATER" => return Some(Production::GreaterLLA),
            _ => {}
        }
        Production::all().find(|p| p.name() == upper)
    }

    pub fn side(self) -> Option<Side> {
        match self {
            Production::Left => Some(Side::Left),
            Production::Right => Some(Side::Right),
            _ => None,
        }
    }

    pub fn attribute(self) -> Option<Attribute> {
        use Production::*;
        Some(match self {
            XPos => Attribute::XPos,
            YPos => Attribute::YPos,
            Distance => Attribute::Distance,
            Orientation => Attribute::Orientation,
            NCorners => Attribute::NCorners,
            Color => Attribute::Color,
            Size => Attribute::Size,
            Compactness => Attribute::Compactness,
            Convexity => Attribute::Convexity,
            Elongation => Attribute::Elongation,
            _ => return None,
        })
    }

    /// The shape class selected by a zero-arity shape terminal; `FIGURES` selects all.
    pub fn shape_terminal(self) -> Option<Option<ShapeClass>> {
        match self {
            Production::Figures => Some(None),
            Production::Circles => Some(Some(ShapeClass::Circle)),
            Production::Triangles => Some(Some(ShapeClass::Triangle)),
            Production::Rectangles => Some(Some(ShapeClass::Rectangle)),
            _ => None,
        }
    }

    pub fn fill_filter(self) -> Option<FillClass> {
        match self {
            Production::Solid => Some(FillClass::Solid),
            Production::Outline => Some(FillClass::Outline),
            _ => None,
        }
    }

    pub fn transform(self) -> Option<Transform> {
        match self {
            Production::Hulls => Some(Transform::Hulls),
            Production::Holes => Some(Transform::Holes),
            _ => None,
        }
    }

    pub fn count(self) -> Option<usize> {
        match self {
            Production::One => Some(1),
            Production::Two => Some(2),
            Production::Three => Some(3),
            Production::Four => Some(4),
            _ => None,
        }
    }

    /// Productions with an argument of their own nonterminal.
    pub fn is_recursive(self) -> bool {
        self.children().contains(&self.nonterminal())
    }
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The grammar's productions with a generation weight for each.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrammarTable {
    weights: Vec<f64>,
}

/// Factor applied to recursive productions in the default weights.
pub const RECURSION_DISCOUNT: f64 = 0.5;

impl GrammarTable {
    /// Equal weight for every production of a nonterminal.
    pub fn uniform() -> Self {
        GrammarTable {
            weights: vec![1.0; PRODUCTIONS],
        }
        .normalized()
    }

    /// Uniform weights with recursive productions discounted by
    /// [`RECURSION_DISCOUNT`], then renormalised.
    pub fn default_weights() -> Self {
        let mut weights = vec![1.0; PRODUCTIONS];
        for p in Production::all() {
            if p.is_recursive() {
                weights[p.index()] *= RECURSION_DISCOUNT;
            }
        }
        GrammarTable { weights }.normalized()
    }

    /// Builds a table from raw (unnormalised) weights; missing productions get zero.
    pub fn from_weights(weights: impl IntoIterator<Item = (Production, f64)>) -> Self {
        let mut table = GrammarTable {
            weights: vec![0.0; PRODUCTIONS],
        };
        for (p, w) in weights {
            table.weights[p.index()] = w;
        }
        table.normalized()
    }

    /// Keeps only the listed productions (with their current weights).
    pub fn restricted_to(&self, keep: &[Production]) -> Self {
        let mut table = self.clone();
        for p in Production::all() {
            if !keep.contains(&p) {
                table.weights[p.index()] = 0.0;
            }
        }
        table.normalized()
    }

    pub fn weight(&self, p: Production) -> f64 {
        self.weights[p.index()]
    }

    pub fn set_weight(&mut self, p: Production, w: f64) {
        self.weights[p.index()] = w;
    }

    /// Rescales each nonterminal's weights to sum to one (all-zero rows stay zero).
    pub fn normalized(mut self) -> Self {
        for nt in Nonterminal::ALL {
            let total: f64 = nt.productions().iter().map(|p| self.weights[p.index()]).sum();
            if total > 0.0 {
                for p in nt.productions() {
                    self.weights[p.index()] /= total;
                }
            }
        }
        self
    }

    /// Nonterminals with no generable production.
    pub fn dead_nonterminals(&self) -> Vec<Nonterminal> {
        Nonterminal::ALL
            .into_iter()
            .filter(|nt| nt.productions().iter().all(|p| self.weight(*p) <= 0.0))
            .collect()
    }

    /// Productions with positive weight, in table order.
    pub fn live(&self, nt: Nonterminal) -> impl Iterator<Item = Production> + '_ {
        nt.productions().iter().copied().filter(|p| self.weight(*p) > 0.0)
    }
}

impl Default for GrammarTable {
    fn default() -> Self {
        GrammarTable::default_weights()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn production_counts_per_nonterminal() {
        let counts: Vec<usize> = Nonterminal::ALL.iter().map(|nt| nt.productions().len()).collect();
        assert_eq!(counts, vec![2, 8, 17, 10, 2, 4]);
        assert_eq!(Production::all().count(), PRODUCTIONS);
        for (i, p) in Production::all().enumerate() {
            assert_eq!(p.index(), i);
        }
    }

    #[test]
    fn names_round_trip() {
        for p in Production::all() {
            assert_eq!(Production::from_name(p.name()), Some(p));
            assert_eq!(Production::from_name(&p.name().to_lowercase()), Some(p));
        }
        assert_eq!(Production::from_name("objects"), Some(Production::Figures));
        assert_eq!(Production::from_name("NOPE"), None);
    }

    #[test]
    fn weights_sum_to_one() {
        for table in [GrammarTable::uniform(), GrammarTable::default_weights()] {
            for nt in Nonterminal::ALL {
                let s: f64 = nt.productions().iter().map(|p| table.weight(*p)).sum();
                assert!((s - 1.0).abs() < 1e-12);
            }
        }
        let d = GrammarTable::default_weights();
        assert!(d.weight(Production::Figures) > d.weight(Production::Cap));
    }
}
