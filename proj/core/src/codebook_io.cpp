#include "sgrass/codebook_io.hpp"

#include <fstream>
#include <sstream>

#include "sgrass/error.hpp"

namespace sgrass {

nlohmann::ordered_json codebook_to_json(const Codebook& book) {
  nlohmann::ordered_json j;
  j["T"] = book.T;
  j["M"] = book.M;
  auto words = nlohmann::ordered_json::array();
  for (const auto& w : book.codewords) {
    auto entries = nlohmann::ordered_json::array();
    const CMatrix& m = w.matrix();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        entries.push_back({m(r, c).real(), m(r, c).imag()});
      }
    }
    words.push_back(std::move(entries));
  }
  j["codewords"] = std::move(words);
  nlohmann::ordered_json meta;
  meta["method"] = book.meta.method;
  meta["seed"] = book.meta.seed;
  meta["params"] = book.meta.params;
  j["meta"] = std::move(meta);
  return j;
}

Codebook codebook_from_json(const nlohmann::ordered_json& j, double tol) {
  int T = 0;
  int M = 0;
  CodebookMeta meta;
  std::vector<Codeword> words;
  try {
    T = j.at("T").get<int>();
    M = j.at("M").get<int>();
    if (T < 2 || M < 1 || M >= T) {
      fail(ErrorCode::DimensionMismatch, "invalid (T, M)");
    }
    for (const auto& entries : j.at("codewords")) {
      if (!entries.is_array() || static_cast<int>(entries.size()) != T * M) {
        fail(ErrorCode::DimensionMismatch, "codeword entry count differs from T*M");
      }
      CMatrix w(T, M);
      for (int r = 0; r < T; ++r) {
        for (int c = 0; c < M; ++c) {
          const auto& z = entries.at(static_cast<std::size_t>(r * M + c));
          if (!z.is_array() || z.size() != 2) fail(ErrorCode::ParseError, "entry must be [re, im]");
          w(r, c) = {z.at(0).get<double>(), z.at(1).get<double>()};
        }
      }
      words.emplace_back(std::move(w), tol);
    }
    if (j.contains("meta")) {
      const auto& m = j.at("meta");
      meta.method = m.value("method", std::string{});
      meta.seed = m.value("seed", std::uint64_t{0});
      if (m.contains("params")) meta.params = m.at("params");
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, e.what());
  }
  Codebook book = make_codebook(std::move(words), std::move(meta));
  book.T = T;
  book.M = M;
  return book;
}

void save_codebook(const Codebook& book, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << codebook_to_json(book).dump(2) << '\n';
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

Codebook load_codebook(const std::filesystem::path& path, double tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return codebook_from_json(j, tol);
}

}  // namespace sgrass
