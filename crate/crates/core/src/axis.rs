//! The three lattice directions and the two orientations along a line.

use std::fmt;

/// One of the generators `xi_1 = (1,0)`, `xi_2 = (-1,sqrt 3)/2`,
/// `xi_3 = (-1,-sqrt 3)/2`, which sum to zero.
///
/// Grid edges are parallel to an axis; honeycomb lines are perpendicular
/// to one.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    One,
    Two,
    Three,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::One, Axis::Two, Axis::Three];

    pub fn index(self) -> usize {
        match self {
            Axis::One => 0,
            Axis::Two => 1,
            Axis::Three => 2,
        }
    }

    pub fn from_index(i: usize) -> Axis {
        Axis::ALL[i % 3]
    }

    /// 1-based label used in file formats.
    pub fn label(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_label(l: u8) -> Option<Axis> {
        match l {
            1 => Some(Axis::One),
            2 => Some(Axis::Two),
            3 => Some(Axis::Three),
            _ => None,
        }
    }

    /// Cyclic successor (`i + 1` mod 3).
    pub fn next(self) -> Axis {
        Axis::from_index(self.index() + 1)
    }

    /// Cyclic predecessor (`i - 1` mod 3).
    pub fn prev(self) -> Axis {
        Axis::from_index(self.index() + 2)
    }

    /// The generator in lattice coordinates `(a, b)` where a point is
    /// `a*xi_1 + b*xi_2`.
    pub fn lattice_vector(self) -> (i64, i64) {
        match self {
            Axis::One => (1, 0),
            Axis::Two => (0, 1),
            Axis::Three => (-1, -1),
        }
    }

    /// Index in `0..6` of the direction `sign * xi_i` when the six unit
    /// directions are listed anticlockwise starting from `xi_1`.
    pub fn heading(self, sign: Sign) -> usize {
        let base = match self {
            Axis::One => 0,
            Axis::Two => 2,
            Axis::Three => 4,
        };
        match sign {
            Sign::Plus => base,
            Sign::Minus => (base + 3) % 6,
        }
    }

    /// Inverse of [`Axis::heading`].
    pub fn from_heading(k: usize) -> (Axis, Sign) {
        match k % 6 {
            0 => (Axis::One, Sign::Plus),
            1 => (Axis::Three, Sign::Minus),
            2 => (Axis::Two, Sign::Plus),
            3 => (Axis::One, Sign::Minus),
            4 => (Axis::Three, Sign::Plus),
            _ => (Axis::Two, Sign::Minus),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const ALL: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_sum_to_zero() {
        let (mut a, mut b) = (0, 0);
        for ax in Axis::ALL {
            let (x, y) = ax.lattice_vector();
            a += x;
            b += y;
        }
        assert_eq!((a, b), (0, 0));
    }

    #[test]
    fn headings_are_a_bijection() {
        for k in 0..6 {
            let (ax, s) = Axis::from_heading(k);
            assert_eq!(ax.heading(s), k);
        }
    }
}
