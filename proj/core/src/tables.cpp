// Embedded (T, M) = (4, 2) reference codebooks, 22 entries each, normalized so
// that W^H W = I. Entries are written as tokens over {0, 1, -1, j, -j} times a
// per-matrix scale.

#include <array>
#include <cmath>
#include <string_view>

#include "sgrass/error.hpp"
#include "sgrass/forge.hpp"

namespace sgrass {
namespace {

enum class Scale { One, InvSqrt2, Half };

struct TableEntry {
  Scale scale;
  std::array<std::string_view, 8> rows;  // row-major 4 x 2
};

cdouble token_value(std::string_view tok, double s) {
  if (tok == "0") return {0.0, 0.0};
  if (tok == "1") return {s, 0.0};
  if (tok == "-1") return {-s, 0.0};
  if (tok == "j") return {0.0, s};
  if (tok == "-j") return {0.0, -s};
  fail(ErrorCode::ParseError, "bad table token");
}

double scale_value(Scale s) {
  switch (s) {
    case Scale::One: return 1.0;
    case Scale::InvSqrt2: return 1.0 / std::sqrt(2.0);
    case Scale::Half: return 0.5;
  }
  return 1.0;
}

template <std::size_t N>
Codebook from_table(const std::array<TableEntry, N>& table, std::string_view method) {
  std::vector<Codeword> words;
  words.reserve(N);
  for (const auto& entry : table) {
    const double s = scale_value(entry.scale);
    CMatrix w(4, 2);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 2; ++c) w(r, c) = token_value(entry.rows[static_cast<std::size_t>(r * 2 + c)], s);
    }
    words.emplace_back(std::move(w), 1e-12);
  }
  CodebookMeta meta{std::string(method), 0, {}};
  meta.params["T"] = 4;
  meta.params["M"] = 2;
  meta.params["size"] = N;
  return make_codebook(std::move(words), std::move(meta));
}

// Indices 1-6 are the six 2-sparse subspaces; both tables share them.
#define SGRASS_TWO_SPARSE                                              \
  TableEntry{Scale::One, {"1", "0", "0", "1", "0", "0", "0", "0"}},   \
  TableEntry{Scale::One, {"1", "0", "0", "0", "0", "1", "0", "0"}},   \
  TableEntry{Scale::One, {"1", "0", "0", "0", "0", "0", "0", "1"}},   \
  TableEntry{Scale::One, {"0", "0", "1", "0", "0", "1", "0", "0"}},   \
  TableEntry{Scale::One, {"0", "0", "1", "0", "0", "0", "0", "1"}},   \
  TableEntry{Scale::One, {"0", "0", "0", "0", "1", "0", "0", "1"}}

constexpr std::array<TableEntry, 22> kNrTable{{
    SGRASS_TWO_SPARSE,
    {Scale::InvSqrt2, {"1", "0", "0", "1", "1", "0", "0", "-j"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "1", "0", "0", "j"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "-j", "0", "0", "1"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "-j", "0", "0", "-1"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "-1", "0", "0", "-j"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "-1", "0", "0", "j"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "j", "0", "0", "1"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "j", "0", "0", "-1"}},
    {Scale::Half, {"1", "1", "1", "1", "1", "-1", "1", "-1"}},
    {Scale::Half, {"1", "1", "1", "1", "j", "-j", "j", "-j"}},
    {Scale::Half, {"1", "1", "j", "j", "1", "-1", "j", "-j"}},
    {Scale::Half, {"1", "1", "j", "j", "j", "-j", "-1", "1"}},
    {Scale::Half, {"1", "1", "-1", "-1", "1", "-1", "-1", "1"}},
    {Scale::Half, {"1", "1", "-1", "-1", "j", "-j", "-j", "j"}},
    {Scale::Half, {"1", "1", "-j", "-j", "1", "-1", "-j", "j"}},
    {Scale::Half, {"1", "1", "-j", "-j", "j", "-j", "1", "-1"}},
}};

constexpr std::array<TableEntry, 22> kProposedTable{{
    SGRASS_TWO_SPARSE,
    {Scale::InvSqrt2, {"1", "0", "0", "1", "-j", "0", "0", "1"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "1", "0", "0", "j"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "1", "0", "0", "-j"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "-j", "0", "0", "-1"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "j", "0", "0", "-1"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "-1", "0", "0", "j"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "j", "0", "0", "1"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "-1", "0", "0", "-j"}},
    {Scale::InvSqrt2, {"1", "0", "-1", "0", "0", "1", "0", "-1"}},
    {Scale::InvSqrt2, {"1", "0", "j", "0", "0", "1", "0", "-j"}},
    {Scale::InvSqrt2, {"1", "0", "-j", "0", "0", "1", "0", "-j"}},
    {Scale::InvSqrt2, {"1", "0", "1", "0", "0", "1", "0", "j"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "0", "-1", "-1", "0"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "0", "-j", "j", "0"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "0", "-j", "-j", "0"}},
    {Scale::InvSqrt2, {"1", "0", "0", "1", "0", "j", "1", "0"}},
}};

#undef SGRASS_TWO_SPARSE

}  // namespace

Codebook nr_codebook_4_2() { return from_table(kNrTable, "nr42"); }

Codebook proposed_codebook_4_2() { return from_table(kProposedTable, "prop42"); }

}  // namespace sgrass
