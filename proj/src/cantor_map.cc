#include "turingflow/cantor_map.h"

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "turingflow/error.h"

namespace turingflow {

namespace {

std::uint64_t ipow(unsigned radix, unsigned exponent) {
  std::uint64_t p = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (p > (std::uint64_t{1} << 62) / radix) {
      throw Error(ErrorCode::kInvalidShift, "block depth too large for the radix");
    }
    p *= radix;
  }
  return p;
}

// k-th digit (1-based) of an offset written with `depth` digits.
unsigned offset_digit(std::uint64_t offset, unsigned depth, unsigned k, unsigned radix) {
  return static_cast<unsigned>((offset / ipow(radix, depth - k)) % radix);
}

bool all_digits_even(std::uint64_t offset, unsigned depth, unsigned radix) {
  for (unsigned k = 0; k < depth; ++k) {
    if ((offset % radix) % 2 != 0) return false;
    offset /= radix;
  }
  return true;
}

bool prefix_match(std::uint64_t a, unsigned da, std::uint64_t b, unsigned db,
                  unsigned radix) {
  if (da <= db) return b / ipow(radix, db - da) == a;
  return a / ipow(radix, da - db) == b;
}

unsigned digit_of(Letter l) { return 2 * static_cast<unsigned>(index_of(l)); }

// Block fixing the letters `word` at positions lo..lo+|word|-1, where the
// range touches the point between positions -1 and 0.
CantorBlock block_from(const Word& word, Position lo, unsigned radix) {
  const Position hi = lo + static_cast<Position>(word.size()) - 1;
  CantorBlock block;
  block.radix = radix;
  block.depth_x = static_cast<unsigned>(std::max<Position>(0, -lo));
  block.depth_y = static_cast<unsigned>(std::max<Position>(0, hi + 1));
  auto at = [&](Position n) { return word[static_cast<std::size_t>(n - lo)]; };
  for (unsigned k = 1; k <= block.depth_x; ++k) {
    block.offset_x = block.offset_x * radix + digit_of(at(-static_cast<Position>(k)));
  }
  for (unsigned k = 1; k <= block.depth_y; ++k) {
    block.offset_y = block.offset_y * radix + digit_of(at(static_cast<Position>(k) - 1));
  }
  return block;
}

RadixRational offset_difference(std::uint64_t to, std::uint64_t from,
                                unsigned depth, unsigned radix) {
  mpz_class diff = mpz_class(static_cast<unsigned long>(to)) -
                   mpz_class(static_cast<unsigned long>(from));
  return RadixRational(std::move(diff), depth, radix);
}

// Per-position constraint set of an image cylinder.
struct ImageShape {
  const BlockPiece* piece;
  int amount;      // F
  Position lo;     // first fixed position in the image
  Position hi;
  bool free_center;  // original position 0 was not cut, so it lands at -F
};

}  // namespace

bool on_cantor_set(const CantorPoint& p) {
  auto even = [](const RadixRational& v) {
    if (v.sign() < 0 || v.numerator() >= v.denominator()) return false;
    for (unsigned d : v.digits()) {
      if (d % 2 != 0) return false;
    }
    return true;
  };
  return p.x.radix() == p.y.radix() && even(p.x) && even(p.y);
}

bool CantorBlock::meets_cantor_set() const {
  return all_digits_even(offset_x, depth_x, radix) &&
         all_digits_even(offset_y, depth_y, radix);
}

bool CantorBlock::contains(const CantorPoint& p) const {
  if (p.x.radix() != radix || p.y.radix() != radix) return false;
  if (p.x.sign() < 0 || p.y.sign() < 0) return false;
  if (p.x.numerator() >= p.x.denominator() || p.y.numerator() >= p.y.denominator()) {
    return false;
  }
  return p.x.leading_digits(depth_x) == offset_x &&
         p.y.leading_digits(depth_y) == offset_y;
}

bool CantorBlock::intersects(const CantorBlock& other) const {
  return radix == other.radix &&
         prefix_match(offset_x, depth_x, other.offset_x, other.depth_x, radix) &&
         prefix_match(offset_y, depth_y, other.offset_y, other.depth_y, radix);
}

RadixRational CantorBlock::x_lo() const {
  return RadixRational(mpz_class(static_cast<unsigned long>(offset_x)), depth_x, radix);
}
RadixRational CantorBlock::x_hi() const {
  return RadixRational(mpz_class(static_cast<unsigned long>(offset_x + 1)), depth_x, radix);
}
RadixRational CantorBlock::y_lo() const {
  return RadixRational(mpz_class(static_cast<unsigned long>(offset_y)), depth_y, radix);
}
RadixRational CantorBlock::y_hi() const {
  return RadixRational(mpz_class(static_cast<unsigned long>(offset_y + 1)), depth_y, radix);
}

PiecewiseBlockMap::PiecewiseBlockMap(unsigned radix, std::size_t alphabet_size,
                                     Window cut, std::vector<BlockPiece> pieces,
                                     std::vector<BlockPiece> identity,
                                     std::vector<int> lookup)
    : radix_(radix),
      alphabet_size_(alphabet_size),
      cut_(cut),
      pieces_(std::move(pieces)),
      identity_(std::move(identity)),
      lookup_(std::move(lookup)) {}

unsigned PiecewiseBlockMap::depth_x() const {
  return static_cast<unsigned>(std::max<Position>(0, -cut_.start));
}

unsigned PiecewiseBlockMap::depth_y() const {
  return static_cast<unsigned>(std::max<Position>(0, cut_.last() + 1));
}

std::optional<std::size_t> PiecewiseBlockMap::locate(const CantorPoint& p) const {
  if (p.x.sign() < 0 || p.y.sign() < 0 || p.x.numerator() >= p.x.denominator() ||
      p.y.numerator() >= p.y.denominator()) {
    return std::nullopt;
  }
  const unsigned dx = depth_x();
  const unsigned dy = depth_y();
  const std::uint64_t lx = p.x.leading_digits(dx);
  const std::uint64_t ly = p.y.leading_digits(dy);
  std::size_t key = 0;
  for (Position n = cut_.start; n <= cut_.last(); ++n) {
    const unsigned d = n < 0 ? offset_digit(lx, dx, static_cast<unsigned>(-n), radix_)
                             : offset_digit(ly, dy, static_cast<unsigned>(n + 1), radix_);
    if (d % 2 != 0) return std::nullopt;
    key = key * alphabet_size_ + d / 2;
  }
  const int idx = lookup_[key];
  if (idx < 0) return std::nullopt;
  return static_cast<std::size_t>(idx);
}

CantorPoint encode_point(const BiSequence& s, std::size_t alphabet_size) {
  const unsigned radix = radix_for(alphabet_size);
  std::vector<unsigned> xd;
  std::vector<unsigned> yd;
  if (auto range = s.support()) {
    for (Position n = -1; n >= range->first; --n) xd.push_back(digit_of(s.at(n)));
    for (Position n = 0; n <= range->second; ++n) yd.push_back(digit_of(s.at(n)));
  }
  for (unsigned d : xd) {
    if (d >= radix) throw Error(ErrorCode::kNotCantor, "letter outside the alphabet");
  }
  for (unsigned d : yd) {
    if (d >= radix) throw Error(ErrorCode::kNotCantor, "letter outside the alphabet");
  }
  return {RadixRational::from_digits(radix, xd), RadixRational::from_digits(radix, yd)};
}

BiSequence decode_point(const CantorPoint& p, std::size_t alphabet_size) {
  const unsigned radix = radix_for(alphabet_size);
  if (p.x.radix() != radix || p.y.radix() != radix) {
    throw Error(ErrorCode::kNotCantor, "point radix does not match the alphabet");
  }
  const auto xd = p.x.digits();
  const auto yd = p.y.digits();
  auto letter = [](unsigned d) {
    if (d % 2 != 0) {
      throw Error(ErrorCode::kNotCantor, "odd digit " + std::to_string(d));
    }
    return Letter(d / 2);
  };
  std::vector<Letter> cells;
  cells.reserve(xd.size() + yd.size());
  for (std::size_t k = xd.size(); k-- > 0;) cells.push_back(letter(xd[k]));
  for (unsigned d : yd) cells.push_back(letter(d));
  return BiSequence(-static_cast<Position>(xd.size()), std::move(cells));
}

PiecewiseBlockMap compile_blockmap(const GeneralizedShift& shift, bool phase_space_only) {
  const std::size_t n = shift.alphabet_size();
  const unsigned radix = radix_for(n);
  const Window& wf = shift.window_f();
  const Window& wg = shift.window_g();

  // Fixing positions 0..F-1 (left shifts) and F..-1 (right shifts) keeps every
  // piece affine.
  const std::size_t table = shift.table_size_f();
  int max_left = 0;
  int max_right = 0;
  for (std::size_t k = 0; k < table; ++k) {
    const int f = shift.shift_for(shift.word_at(k, wf.size));
    max_left = std::max(max_left, f);
    max_right = std::max(max_right, -f);
  }
  const Position lo = std::min({wf.start, wg.start, Position{0}, Position{-max_right}});
  const Position hi = std::max({wf.last(), wg.last(), Position{-1}, Position{max_left - 1}});
  const Window cut{lo, static_cast<std::size_t>(hi - lo + 1)};

  std::size_t total = 1;
  for (std::size_t i = 0; i < cut.size; ++i) {
    if (total > (std::size_t{1} << 22) / n) {
      throw Error(ErrorCode::kInvalidShift, "too many cylinders for a block map");
    }
    total *= n;
  }

  std::vector<BlockPiece> pieces;
  std::vector<BlockPiece> identity;
  std::vector<int> lookup(total, -1);
  for (std::size_t key = 0; key < total; ++key) {
    Word word = shift.word_at(key, cut.size);
    if (phase_space_only && shift.phase_space()) {
      bool admitted = true;
      for (std::size_t i = 0; i < word.size() && admitted; ++i) {
        admitted = shift.phase_space()->admits(lo + static_cast<Position>(i), word[i]);
      }
      if (!admitted) continue;
    }
    auto sub = [&](const Window& w) {
      const auto off = static_cast<std::size_t>(w.start - lo);
      return std::span<const Letter>(word.data() + off, w.size);
    };
    const int f = shift.shift_for(sub(wf));
    const auto g = shift.rewrite_for(sub(wg));
    Word rewritten = word;
    std::copy(g.begin(), g.end(),
              rewritten.begin() + static_cast<std::ptrdiff_t>(wg.start - lo));

    BlockPiece piece{word, block_from(word, lo, radix), block_from(rewritten, lo - f, radix),
                     -f, RadixRational(radix), RadixRational(radix)};
    piece.cx = offset_difference(piece.image.offset_x, piece.domain.offset_x,
                                 piece.image.depth_x, radix);
    piece.cy = offset_difference(piece.image.offset_y, piece.domain.offset_y,
                                 piece.image.depth_y, radix);
    if (f == 0 && rewritten == word) {
      identity.push_back(std::move(piece));
    } else {
      lookup[key] = static_cast<int>(pieces.size());
      pieces.push_back(std::move(piece));
    }
  }
  return PiecewiseBlockMap(radix, n, cut, std::move(pieces), std::move(identity),
                           std::move(lookup));
}

CantorPoint apply_piece(const BlockPiece& piece, const CantorPoint& p) {
  return {p.x.scaled(piece.exponent) + piece.cx, p.y.scaled(-piece.exponent) + piece.cy};
}

CantorPoint apply_blockmap(const PiecewiseBlockMap& map, const CantorPoint& p) {
  const auto idx = map.locate(p);
  if (!idx) return p;
  return apply_piece(map.pieces()[*idx], p);
}

DisjointnessReport image_blocks_disjoint(const PiecewiseBlockMap& map,
                                         const std::optional<PhaseSpace>& space) {
  const Window& cut = map.cut();
  const bool cut_has_origin = cut.start <= 0 && cut.last() >= 0;
  std::vector<ImageShape> shapes;
  std::vector<std::size_t> ids;
  auto consider = [&](const BlockPiece& piece, std::size_t id) {
    if (space) {
      for (std::size_t i = 0; i < piece.window.size(); ++i) {
        if (!space->admits(cut.start + static_cast<Position>(i), piece.window[i])) return;
      }
    }
    const int f = static_cast<int>(-piece.exponent);
    shapes.push_back({&piece, f, cut.start - f, cut.last() - f, !cut_has_origin});
    ids.push_back(id);
  };
  for (std::size_t i = 0; i < map.pieces().size(); ++i) consider(map.pieces()[i], i);
  for (std::size_t i = 0; i < map.identity_pieces().size(); ++i) {
    consider(map.identity_pieces()[i], map.pieces().size() + i);
  }

  bool center_meets_background = true;
  if (space) {
    center_meets_background = std::any_of(
        space->center.begin(), space->center.end(), [&](Letter l) {
          return std::find(space->background.begin(), space->background.end(), l) !=
                 space->background.end();
        });
  }

  // Allowed letters at position n of an image: a single letter on the fixed
  // range, otherwise whatever the phase space allows at the preimage.
  enum class Kind { kFixed, kCenter, kBackground, kAny };
  auto kind_at = [&](const ImageShape& s, Position n, Letter& fixed) {
    if (n >= s.lo && n <= s.hi) {
      const CantorBlock& b = s.piece->image;
      const unsigned d = n < 0 ? offset_digit(b.offset_x, b.depth_x, static_cast<unsigned>(-n), b.radix)
                               : offset_digit(b.offset_y, b.depth_y, static_cast<unsigned>(n + 1), b.radix);
      fixed = Letter(d / 2);
      return Kind::kFixed;
    }
    if (!space) return Kind::kAny;
    return (s.free_center && n == -s.amount) ? Kind::kCenter : Kind::kBackground;
  };
  auto allowed = [&](Kind k, Letter l) {
    switch (k) {
      case Kind::kCenter:
        return std::find(space->center.begin(), space->center.end(), l) != space->center.end();
      case Kind::kBackground:
        return std::find(space->background.begin(), space->background.end(), l) !=
               space->background.end();
      default:
        return true;
    }
  };
  auto overlap = [&](const ImageShape& a, const ImageShape& b) {
    Position lo = std::min(a.lo, b.lo);
    Position hi = std::max(a.hi, b.hi);
    if (a.free_center) { lo = std::min(lo, Position{-a.amount}); hi = std::max(hi, Position{-a.amount}); }
    if (b.free_center) { lo = std::min(lo, Position{-b.amount}); hi = std::max(hi, Position{-b.amount}); }
    for (Position n = lo; n <= hi; ++n) {
      Letter la{};
      Letter lb{};
      const Kind ka = kind_at(a, n, la);
      const Kind kb = kind_at(b, n, lb);
      if (ka == Kind::kFixed && kb == Kind::kFixed) {
        if (la != lb) return false;
      } else if (ka == Kind::kFixed) {
        if (!allowed(kb, la)) return false;
      } else if (kb == Kind::kFixed) {
        if (!allowed(ka, lb)) return false;
      } else if (ka != kb && (ka == Kind::kCenter || kb == Kind::kCenter) &&
                 ka != Kind::kAny && kb != Kind::kAny) {
        if (!center_meets_background) return false;
      }
    }
    return true;
  };

  DisjointnessReport report;
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    for (std::size_t j = i + 1; j < shapes.size(); ++j) {
      if (!shapes[i].piece->image.intersects(shapes[j].piece->image)) continue;
      if (overlap(shapes[i], shapes[j])) {
        report.disjoint = false;
        report.overlap = std::pair{ids[i], ids[j]};
        return report;
      }
    }
  }
  return report;
}

mpz_class piece_count_bound(const GeneralizedShift& shift) {
  const Window& a = shift.window_f();
  const Window& b = shift.window_g();
  std::set<Position> positions;
  for (Position n = a.start; n <= a.last(); ++n) positions.insert(n);
  for (Position n = b.start; n <= b.last(); ++n) positions.insert(n);
  return power_of(static_cast<unsigned>(shift.alphabet_size()),
                  positions.size() + static_cast<std::size_t>(shift.max_abs_shift()));
}

VerificationReport verify_blockmap(const PiecewiseBlockMap& map,
                                   const GeneralizedShift& shift, std::size_t samples,
                                   std::uint64_t seed) {
  VerificationReport r;
  const unsigned radix = map.radix();
  const std::size_t n = map.alphabet_size();

  std::vector<const BlockPiece*> all;
  for (const auto& p : map.pieces()) all.push_back(&p);
  for (const auto& p : map.identity_pieces()) all.push_back(&p);
  r.piece_count = map.pieces().size();
  r.cylinder_count = all.size();

  std::size_t expected = 1;
  for (std::size_t i = 0; i < map.cut().size; ++i) expected *= n;
  std::set<std::pair<std::uint64_t, std::uint64_t>> offsets;
  bool partition = all.size() == expected;
  for (const auto* p : all) {
    partition = partition && p->domain.depth_x == map.depth_x() &&
                p->domain.depth_y == map.depth_y() && p->domain.meets_cantor_set() &&
                offsets.insert({p->domain.offset_x, p->domain.offset_y}).second;
  }
  r.domains_partition = partition;

  bool unit = true;
  bool images = true;
  const mpq_class b(radix);
  for (const auto* p : all) {
    mpq_class sx = 1;
    mpq_class sy = 1;
    for (long k = 0; k < std::abs(p->exponent); ++k) {
      if (p->exponent > 0) { sx *= b; sy /= b; } else { sx /= b; sy *= b; }
    }
    unit = unit && (sx * sy == 1);
    const CantorPoint lo{p->domain.x_lo(), p->domain.y_lo()};
    const CantorPoint hi{p->domain.x_hi(), p->domain.y_hi()};
    const CantorPoint lo2 = apply_piece(*p, lo);
    const CantorPoint hi2 = apply_piece(*p, hi);
    images = images && lo2.x == p->image.x_lo() && lo2.y == p->image.y_lo() &&
             hi2.x == p->image.x_hi() && hi2.y == p->image.y_hi() &&
             p->image.meets_cantor_set();
  }
  r.unit_determinants = unit;
  r.images_match_blocks = images;

  r.bound = piece_count_bound(shift);
  std::set<std::tuple<long, std::string, std::string>> maps;
  for (const auto& p : map.pieces()) {
    maps.emplace(p.exponent, p.cx.to_string(), p.cy.to_string());
  }
  r.components = maps.size();
  r.components_unmerged = maps.size() + (map.identity_pieces().empty() ? 0 : 1);
  r.within_bound = mpz_class(static_cast<unsigned long>(r.components)) <= r.bound &&
                   mpz_class(static_cast<unsigned long>(r.components_unmerged)) <= r.bound;

  r.images = image_blocks_disjoint(map, shift.phase_space());
  r.images_full = image_blocks_disjoint(map, std::nullopt);

  std::mt19937_64 rng(seed);
  const auto& space = shift.phase_space();
  for (std::size_t s = 0; s < samples; ++s) {
    const bool in_space = space && s % 2 == 0;
    std::uniform_int_distribution<int> len(0, 6);
    const Position lo = -len(rng);
    const Position hi = len(rng);
    std::vector<Letter> cells;
    for (Position pos = lo; pos <= hi; ++pos) {
      if (in_space) {
        const auto& pool = pos == 0 ? space->center : space->background;
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        cells.push_back(pool[pick(rng)]);
      } else {
        std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
        cells.push_back(Letter(pick(rng)));
      }
    }
    const BiSequence seq(lo, std::move(cells));
    const CantorPoint image = apply_blockmap(map, encode_point(seq, n));
    ++r.conjugacy_samples;
    if (!(decode_point(image, n) == apply(shift, seq))) ++r.conjugacy_failures;
  }
  return r;
}

std::vector<CantorBlock> halt_region(const Conjugation& conj) {
  const std::size_t n = conj.alphabet_size();
  const unsigned radix = radix_for(n);
  const unsigned h = digit_of(conj.state_letter(conj.halting()));
  std::vector<CantorBlock> blocks;
  blocks.reserve(n * n);
  for (std::size_t left = 0; left < n; ++left) {
    for (std::size_t right = 0; right < n; ++right) {
      CantorBlock block;
      block.radix = radix;
      block.depth_x = 1;
      block.offset_x = 2 * left;
      block.depth_y = 2;
      block.offset_y = std::uint64_t{h} * radix + 2 * right;
      blocks.push_back(block);
    }
  }
  return blocks;
}

bool in_region(const std::vector<CantorBlock>& region, const CantorPoint& p) {
  return std::any_of(region.begin(), region.end(),
                     [&](const CantorBlock& b) { return b.contains(p); });
}

std::string describe(const CantorBlock& b) {
  auto side = [&](std::uint64_t off, unsigned depth) {
    const std::string den = std::to_string(b.radix) + "^" + std::to_string(depth);
    return "[" + std::to_string(off) + "/" + den + "," + std::to_string(off + 1) + "/" + den + "]";
  };
  return side(b.offset_x, b.depth_x) + "x" + side(b.offset_y, b.depth_y);
}

}  // namespace turingflow
