//! Built-in 5×7 bitmap alphabet.
//!
//! Latin capitals, digits, and twenty dense pseudo-ideograph glyphs mapped to
//! CJK code points. The dense glyphs stand in for the high stroke density of
//! Chinese characters so the small-glyph regime is testable without real
//! font rasterization.

use std::sync::OnceLock;

/// Glyph cell width in atlas cells.
pub const CELL_W: usize = 5;
/// Glyph cell height in atlas cells.
pub const CELL_H: usize = 7;
/// Horizontal advance between character origins, in cells (one cell of gap).
pub const ADVANCE: usize = CELL_W + 1;

/// A single 5×7 glyph bitmap.
#[derive(Debug, Clone, Copy)]
pub struct Glyph {
    pub ch: char,
    rows: [u8; CELL_H],
}

impl Glyph {
    /// Ink at cell `(col, row)`.
    #[inline]
    pub fn ink(&self, col: usize, row: usize) -> bool {
        (self.rows[row] >> (CELL_W - 1 - col)) & 1 == 1
    }

    /// Number of ink cells.
    pub fn ink_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// The bitmap as a flat 5×7 vector of {0,1}, row-major.
    pub fn cells(&self) -> [f64; CELL_W * CELL_H] {
        let mut out = [0.0; CELL_W * CELL_H];
        for row in 0..CELL_H {
            for col in 0..CELL_W {
                if self.ink(col, row) {
                    out[row * CELL_W + col] = 1.0;
                }
            }
        }
        out
    }
}

/// The full built-in alphabet.
pub struct GlyphAtlas {
    glyphs: Vec<Glyph>,
}

impl GlyphAtlas {
    /// Shared instance of the built-in alphabet.
    pub fn builtin() -> &'static GlyphAtlas {
        static ATLAS: OnceLock<GlyphAtlas> = OnceLock::new();
        ATLAS.get_or_init(|| {
            let glyphs = FONT
                .iter()
                .map(|&(ch, pattern)| parse_glyph(ch, pattern))
                .collect();
            GlyphAtlas { glyphs }
        })
    }

    pub fn get(&self, ch: char) -> Option<&Glyph> {
        self.glyphs.iter().find(|g| g.ch == ch)
    }

    pub fn glyphs(&self) -> &[Glyph] {
        &self.glyphs
    }

    /// Latin capitals and digits.
    pub fn latin_chars(&self) -> Vec<char> {
        self.glyphs
            .iter()
            .map(|g| g.ch)
            .filter(|c| c.is_ascii())
            .collect()
    }

    /// The dense pseudo-ideograph glyphs.
    pub fn ideograph_chars(&self) -> Vec<char> {
        self.glyphs
            .iter()
            .map(|g| g.ch)
            .filter(|c| !c.is_ascii())
            .collect()
    }

    pub fn contains(&self, ch: char) -> bool {
        self.get(ch).is_some()
    }
}

fn parse_glyph(ch: char, pattern: [&str; CELL_H]) -> Glyph {
    let mut rows = [0u8; CELL_H];
    for (y, line) in pattern.iter().enumerate() {
        assert_eq!(line.len(), CELL_W, "glyph {ch:?} row {y} has wrong width");
        for (x, cell) in line.bytes().enumerate() {
            if cell == b'#' {
                rows[y] |= 1 << (CELL_W - 1 - x);
            }
        }
    }
    Glyph { ch, rows }
}

#[rustfmt::skip]
const FONT: &[(char, [&str; CELL_H])] = &[
    ('A', [".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"]),
    ('B', ["####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."]),
    ('C', [".###.", "#...#", "#....", "#....", "#....", "#...#", ".###."]),
    ('D', ["####.", "#...#", "#...#", "#...#", "#...#", "#...#", "####."]),
    ('E', ["#####", "#....", "#....", "####.", "#....", "#....", "#####"]),
    ('F', ["#####", "#....", "#....", "####.", "#....", "#....", "#...."]),
    ('G', [".###.", "#...#", "#....", "#.###", "#...#", "#...#", ".####"]),
    ('H', ["#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"]),
    ('I', [".###.", "..#..", "..#..", "..#..", "..#..", "..#..", ".###."]),
    ('J', ["..###", "...#.", "...#.", "...#.", "...#.", "#..#.", ".##.."]),
    ('K', ["#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"]),
    ('L', ["#....", "#....", "#....", "#....", "#....", "#....", "#####"]),
    ('M', ["#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"]),
    ('N', ["#...#", "##..#", "#.#.#", "#..##", "#...#", "#...#", "#...#"]),
    ('O', [".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."]),
    ('P', ["####.", "#...#", "#...#", "####.", "#....", "#....", "#...."]),
    ('Q', [".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"]),
    ('R', ["####.", "#...#", "#...#", "####.", "#.#..", "#..#.", "#...#"]),
    ('S', [".####", "#....", "#....", ".###.", "....#", "....#", "####."]),
    ('T', ["#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."]),
    ('U', ["#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."]),
    ('V', ["#...#", "#...#", "#...#", "#...#", "#...#", ".#.#.", "..#.."]),
    ('W', ["#...#", "#...#", "#...#", "#.#.#", "#.#.#", "##.##", "#...#"]),
    ('X', ["#...#", "#...#", ".#.#.", "..#..", ".#.#.", "#...#", "#...#"]),
    ('Y', ["#...#", "#...#", ".#.#.", "..#..", "..#..", "..#..", "..#.."]),
    ('Z', ["#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"]),
    ('0', [".###.", "#...#", "#..##", "#.#.#", "##..#", "#...#", ".###."]),
    ('1', ["..#..", ".##..", "..#..", "..#..", "..#..", "..#..", ".###."]),
    ('2', [".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"]),
    ('3', [".###.", "#...#", "....#", "..##.", "....#", "#...#", ".###."]),
    ('4', ["...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."]),
    ('5', ["#####", "#....", "####.", "....#", "....#", "#...#", ".###."]),
    ('6', [".###.", "#....", "#....", "####.", "#...#", "#...#", ".###."]),
    ('7', ["#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."]),
    ('8', [".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."]),
    ('9', [".###.", "#...#", "#...#", ".####", "....#", "....#", ".###."]),
    // Dense pseudo-ideographs.
    ('日', ["#####", "#...#", "#...#", "#####", "#...#", "#...#", "#####"]),
    ('月', ["#####", "#...#", "#####", "#...#", "#####", "#...#", "#..##"]),
    ('木', ["..#..", "..#..", "#####", ".###.", "#.#.#", "#.#.#", "..#.."]),
    ('水', ["..#..", "#.#.#", "..#.#", "#.#..", "..#..", ".#.#.", "#.#.#"]),
    ('火', ["#.#.#", ".#.#.", "..#..", ".###.", ".#.#.", "#...#", "#...#"]),
    ('山', ["..#..", "..#..", "#.#.#", "#.#.#", "#.#.#", "#...#", "#####"]),
    ('石', ["#####", "...#.", "..#..", ".####", ".#..#", ".#..#", ".####"]),
    ('田', ["#####", "#.#.#", "#.#.#", "#####", "#.#.#", "#.#.#", "#####"]),
    ('土', ["..#..", "..#..", "#####", "..#..", "..#..", "..#..", "#####"]),
    ('口', ["#####", "#...#", "#...#", "#...#", "#...#", "#...#", "#####"]),
    ('人', ["..#..", "..#..", ".#.#.", ".#.#.", ".#.#.", "#...#", "#...#"]),
    ('大', ["..#..", "..#..", "#####", ".#.#.", ".#.#.", "#...#", "#...#"]),
    ('小', ["..#..", "..#..", "#.#.#", "#.#.#", "#.#.#", "..#..", ".##.."]),
    ('中', ["..#..", "#####", "#.#.#", "#.#.#", "#####", "..#..", "..#.."]),
    ('上', ["..#..", "..#..", "..###", "..#..", "..#..", "..#..", "#####"]),
    ('下', ["#####", "..#..", "..#..", "..###", "..#..", "..#..", "..#.."]),
    ('左', ["#####", ".#...", ".#...", ".####", "#..#.", "#..#.", "####."]),
    ('右', ["#####", "..#..", ".####", "#.#.#", "..#.#", "..###", "..#.."]),
    ('天', ["#####", "..#..", "#####", ".#.#.", ".#.#.", "#...#", "#...#"]),
    ('立', ["..#..", "#####", ".#.#.", ".#.#.", ".#.#.", "..#..", "#####"]),
];
