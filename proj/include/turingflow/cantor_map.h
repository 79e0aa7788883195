#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "turingflow/gshift.h"
#include "turingflow/radix_rational.h"

namespace turingflow {

// Odd radix used for an alphabet of n letters: 2n - 1, digits 0, 2, ..., 2n-2.
constexpr unsigned radix_for(std::size_t alphabet_size) {
  return static_cast<unsigned>(2 * alphabet_size - 1);
}

struct CantorPoint {
  RadixRational x;
  RadixRational y;

  bool operator==(const CantorPoint&) const = default;
};

// Every base-radix digit of both coordinates is even.
bool on_cantor_set(const CantorPoint& p);

// [a / b^i, (a+1) / b^i] x [c / b^j, (c+1) / b^j].
struct CantorBlock {
  unsigned radix = 3;
  unsigned depth_x = 0;
  std::uint64_t offset_x = 0;
  unsigned depth_y = 0;
  std::uint64_t offset_y = 0;

  // All digits of both offsets are even, i.e. the interior meets C x C.
  bool meets_cantor_set() const;
  // Digit-prefix test; exact.
  bool contains(const CantorPoint& p) const;
  // Closed blocks with even digits overlap iff one digit string extends the
  // other on both axes.
  bool intersects(const CantorBlock& other) const;

  RadixRational x_lo() const;
  RadixRational x_hi() const;
  RadixRational y_lo() const;
  RadixRational y_hi() const;

  friend bool operator==(const CantorBlock&, const CantorBlock&) = default;
};

// Affine piece (x, y) -> (b^m x + cx, b^-m y + cy) on `domain`, mapping it
// onto `image`.
struct BlockPiece {
  Word window;  // letters at the cut positions, lowest position first
  CantorBlock domain;
  CantorBlock image;
  long exponent = 0;  // m
  RadixRational cx;
  RadixRational cy;
};

class PiecewiseBlockMap {
 public:
  PiecewiseBlockMap(unsigned radix, std::size_t alphabet_size, Window cut,
                    std::vector<BlockPiece> pieces, std::vector<BlockPiece> identity,
                    std::vector<int> lookup);

  unsigned radix() const { return radix_; }
  std::size_t alphabet_size() const { return alphabet_size_; }
  // Positions fixed by every domain block.
  const Window& cut() const { return cut_; }
  unsigned depth_x() const;
  unsigned depth_y() const;

  // Non-identity pieces; everything else is the identity.
  const std::vector<BlockPiece>& pieces() const { return pieces_; }
  // Cylinders whose piece acts as the identity (merged into the default).
  const std::vector<BlockPiece>& identity_pieces() const { return identity_; }

  // Index into pieces() for the block containing p, or nullopt when p is in
  // an identity cylinder or off the Cantor set.
  std::optional<std::size_t> locate(const CantorPoint& p) const;

 private:
  unsigned radix_;
  std::size_t alphabet_size_;
  Window cut_;
  std::vector<BlockPiece> pieces_;
  std::vector<BlockPiece> identity_;
  std::vector<int> lookup_;  // cylinder key -> piece index or -1
};

CantorPoint encode_point(const BiSequence& s, std::size_t alphabet_size);

// Error kNotCantor when a digit is odd or a letter is out of range.
BiSequence decode_point(const CantorPoint& p, std::size_t alphabet_size);

// With phase_space_only set, cylinders whose window the shift's phase space
// rules out are skipped; the result then agrees with the full map on the
// phase space only.
PiecewiseBlockMap compile_blockmap(const GeneralizedShift& shift,
                                   bool phase_space_only = false);

CantorPoint apply_piece(const BlockPiece& piece, const CantorPoint& p);
CantorPoint apply_blockmap(const PiecewiseBlockMap& map, const CantorPoint& p);

struct DisjointnessReport {
  bool disjoint = true;
  // Indices into the combined list pieces() followed by identity_pieces().
  std::optional<std::pair<std::size_t, std::size_t>> overlap;
};

// Pairwise disjointness of image blocks over all cylinders. With a phase
// space only cylinders whose domain meets it are compared, and two images
// overlap only where the combined constraints are admissible.
DisjointnessReport image_blocks_disjoint(const PiecewiseBlockMap& map,
                                         const std::optional<PhaseSpace>& space);

// n^(|D_F u D_G| + max|F|).
mpz_class piece_count_bound(const GeneralizedShift& shift);

struct VerificationReport {
  bool domains_partition = false;
  bool unit_determinants = false;
  bool images_match_blocks = false;
  std::size_t piece_count = 0;      // non-identity cylinders
  std::size_t cylinder_count = 0;   // including merged identity pieces
  // Distinct affine maps. A component is the union of the cylinders sharing
  // one map; the bound counts components, since a uniform cut can split one
  // component into many cylinders when the windows sit away from the origin.
  std::size_t components = 0;           // identity merged into the default
  std::size_t components_unmerged = 0;  // identity counted as a component
  mpz_class bound;
  bool within_bound = false;
  DisjointnessReport images;        // on the phase space if the shift has one
  DisjointnessReport images_full;   // on the whole square Cantor set
  std::size_t conjugacy_samples = 0;
  std::size_t conjugacy_failures = 0;

  bool ok() const {
    return domains_partition && unit_determinants && images_match_blocks &&
           within_bound && conjugacy_failures == 0;
  }
};

VerificationReport verify_blockmap(const PiecewiseBlockMap& map,
                                   const GeneralizedShift& shift,
                                   std::size_t samples = 200,
                                   std::uint64_t seed = 1);

// Blocks of depth (1, 2) whose position-0 letter is the halting state.
std::vector<CantorBlock> halt_region(const Conjugation& conj);

bool in_region(const std::vector<CantorBlock>& region, const CantorPoint& p);

std::string describe(const CantorBlock& block);

}  // namespace turingflow
