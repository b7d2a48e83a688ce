#include "sgrass/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "sgrass/audit.hpp"
#include "sgrass/codebook_io.hpp"
#include "sgrass/csv.hpp"
#include "sgrass/error.hpp"
#include "sgrass/forge.hpp"
#include "sgrass/grassmann.hpp"
#include "sgrass/linksim.hpp"
#include "sgrass/wavesim.hpp"

#ifndef SGRASS_VERSION
#define SGRASS_VERSION "unknown"
#endif

namespace sgrass::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "a:b:step", inclusive of b up to rounding; a single number is a one-point range.
std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      parts.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw UsageError("bad range '" + text + "'");
    }
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || parts[2] <= 0.0 || parts[1] < parts[0]) {
    throw UsageError("range must be start:stop:step with step > 0");
  }
  const auto steps = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  std::vector<double> out;
  for (long i = 0; i <= steps; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return out;
}

double parse_k(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfiniteK;
  try {
    return std::stod(text);
  } catch (const std::exception&) {
    throw UsageError("bad K-factor '" + text + "'");
  }
}

std::string label_of(const std::string& path) { return fs::path(path).stem().string(); }

/// Output sink: a file when a path is given, otherwise the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) fail(ErrorCode::IoError, "cannot write '" + path + "'");
    }
    stream_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& stream() { return *stream_; }
  void close() {
    if (file_) {
      file_->close();
      if (!*file_) fail(ErrorCode::IoError, "failed writing '" + path_ + "'");
    }
  }

 private:
  std::string path_;
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

struct Manifest {
  explicit Manifest(std::string cmd) : command(std::move(cmd)) {}

  std::string command;
  Json params = Json::object();
  std::uint64_t seed = 0;
  std::vector<std::string> outputs;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const std::string& path) const {
    if (path.empty()) return;
    Json j;
    j["command"] = command;
    j["params"] = params;
    j["seed"] = seed;
    j["tool_version"] = SGRASS_VERSION;
    j["outputs"] = outputs;
    j["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ofstream f(path, std::ios::binary);
    f << j.dump(2) << '\n';
    if (!f) fail(ErrorCode::IoError, "cannot write manifest '" + path + "'");
  }
};

std::string manifest_path(const std::string& explicit_path, const std::string& output) {
  if (!explicit_path.empty()) return explicit_path;
  if (output.empty()) return {};
  return output + ".manifest.json";
}

std::vector<Codebook> load_all(const std::vector<std::string>& paths) {
  std::vector<Codebook> books;
  books.reserve(paths.size());
  for (const auto& p : paths) books.push_back(load_codebook(p));
  return books;
}

// ---------------------------------------------------------------- design

struct DesignArgs {
  std::string method;
  int T = 0;
  int M = 0;
  int s = 0;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  std::string grid;
  int restarts = 4;
  int iterations = 200;
  double spread = 0.5;
  std::string output;
  std::string manifest;
};

void add_design(CLI::App& app, DesignArgs& a) {
  auto* c = app.add_subcommand("design", "construct a codebook and write it as JSON");
  c->add_option("--method", a.method, "sparse2m | sparse-general | manopt | expmap | nr42 | prop42")
      ->required()
      ->check(CLI::IsMember({"sparse2m", "sparse-general", "manopt", "expmap", "nr42", "prop42"}));
  c->add_option("-T", a.T, "transmit antennas")->check(CLI::PositiveNumber);
  c->add_option("-M", a.M, "streams")->check(CLI::PositiveNumber);
  c->add_option("-s,--sparsity", a.s, "nonzeros per codeword (sparse-general)")
      ->check(CLI::PositiveNumber);
  c->add_option("--size", a.size, "codebook size")->check(CLI::PositiveNumber);
  c->add_option("--seed", a.seed, "64-bit seed");
  c->add_option("--grid", a.grid, "restrict phases to a grid")->check(CLI::IsMember({"quarter"}));
  c->add_option("--restarts", a.restarts, "optimizer restarts")->check(CLI::PositiveNumber);
  c->add_option("--iterations", a.iterations, "iterations per smoothing stage")
      ->check(CLI::PositiveNumber);
  c->add_option("--spread", a.spread, "Exp-Map entry spread")->check(CLI::PositiveNumber);
  c->add_option("-o,--output", a.output, "codebook JSON path")->required();
  c->add_option("--manifest", a.manifest, "manifest path (default <output>.manifest.json)");
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

int run_design(const DesignArgs& a, std::ostream& out) {
  Manifest manifest{"design"};
  manifest.seed = a.seed;
  OptimizerConfig cfg;
  cfg.seed = a.seed;
  cfg.restarts = a.restarts;
  cfg.max_iterations = a.iterations;
  if (a.grid == "quarter") cfg.phase_grid = quarter_grid();

  Codebook book;
  const std::string& m = a.method;
  if (m == "nr42") {
    book = nr_codebook_4_2();
  } else if (m == "prop42") {
    book = proposed_codebook_4_2();
  } else {
    require(a.M > 0, "--method " + m + " needs -M");
    require(a.size > 0, "--method " + m + " needs --size");
    if (m == "sparse2m") {
      require(a.T == 0 || a.T == 2 * a.M, "sparse2m requires T = 2M");
      book = build_sparse_2M(a.M, a.size, cfg);
    } else {
      require(a.T > 0, "--method " + m + " needs -T");
      if (m == "sparse-general") {
        require(a.s > 0, "sparse-general needs --sparsity");
        book = build_general_sparse(a.T, a.M, a.s, a.size, cfg);
      } else if (m == "manopt") {
        book = optimize_manopt(a.T, a.M, a.size, cfg);
      } else {
        book = build_expmap(a.T, a.M, a.size, ExpMapConfig{a.spread, a.seed});
      }
    }
  }
  save_codebook(book, a.output);
  manifest.params = {{"method", a.method}, {"T", book.T},        {"M", book.M},
                     {"size", book.size()}, {"sparsity", a.s},    {"grid", a.grid},
                     {"restarts", a.restarts}, {"iterations", a.iterations},
                     {"spread", a.spread}};
  manifest.outputs = {a.output};
  manifest.write(manifest_path(a.manifest, a.output));

  if (book.size() >= 2) {
    const auto d = min_chordal_distance(book);
    out << fmt::format("mcd {} pair {} {}\n", format_double(d.value), d.pair.first + 1,
                       d.pair.second + 1);
  }
  return 0;
}

// ---------------------------------------------------------------- mcd

struct McdArgs {
  std::vector<std::string> files;
  std::string output;
  std::string manifest;
};

void add_mcd(CLI::App& app, McdArgs& a) {
  auto* c = app.add_subcommand("mcd", "minimum chordal distance of codebook files");
  c->add_option("files", a.files, "codebook JSON files")->required();
  c->add_option("-o,--output", a.output, "CSV path (default stdout)");
  c->add_option("--manifest", a.manifest, "manifest path");
}

int run_mcd(const McdArgs& a, std::ostream& out) {
  Manifest manifest{"mcd"};
  const auto books = load_all(a.files);
  Sink sink(a.output, out);
  CsvWriter csv(sink.stream());
  csv.header({"file", "size", "mcd", "pair_i", "pair_j"});
  for (std::size_t i = 0; i < books.size(); ++i) {
    const auto d = min_chordal_distance(books[i]);
    csv.cell(a.files[i]).cell(books[i].size()).cell(d.value);
    csv.cell(d.pair.first + 1).cell(d.pair.second + 1).end_row();
  }
  sink.close();
  manifest.params = {{"files", a.files}};
  if (!a.output.empty()) manifest.outputs = {a.output};
  manifest.write(manifest_path(a.manifest, a.output));
  return 0;
}

// ---------------------------------------------------------------- rate

struct RateArgs {
  std::vector<std::string> codebooks;
  int N = 32;
  std::string snr = "0:20:2";
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  std::string output;
  std::string manifest;
};

void add_rate(CLI::App& app, RateArgs& a) {
  auto* c = app.add_subcommand("rate", "paired achievable-rate curves under Rayleigh fading");
  c->add_option("--codebook", a.codebooks, "codebook JSON files (repeatable)")->required();
  c->add_option("-N", a.N, "receive antennas")->check(CLI::PositiveNumber);
  c->add_option("--snr", a.snr, "SNR grid in dB, start:stop:step");
  c->add_option("--trials", a.trials, "channel realizations")->check(CLI::PositiveNumber);
  c->add_option("--seed", a.seed, "64-bit seed");
  c->add_option("-o,--output", a.output, "CSV path (default stdout)");
  c->add_option("--manifest", a.manifest, "manifest path");
}

int run_rate(const RateArgs& a, std::ostream& out) {
  Manifest manifest{"rate"};
  manifest.seed = a.seed;
  const auto snr = parse_range(a.snr);
  const auto books = load_all(a.codebooks);
  const auto result = rate_curve(books, a.N, snr, a.trials, a.seed);

  Sink sink(a.output, out);
  CsvWriter csv(sink.stream());
  std::vector<std::string> header{"snr_db"};
  for (std::size_t b = 0; b < books.size(); ++b) header.push_back(fmt::format("rate_{}", b + 1));
  for (const auto& d : result.differences) {
    header.push_back(fmt::format("diff_{}_{}", d.a + 1, d.b + 1));
    header.push_back(fmt::format("se_{}_{}", d.a + 1, d.b + 1));
  }
  csv.header(header);
  for (std::size_t s = 0; s < snr.size(); ++s) {
    csv.cell(snr[s]);
    for (const auto& rates : result.mean_rate) csv.cell(rates[s]);
    for (const auto& d : result.differences) csv.cell(d.mean[s]).cell(d.standard_error[s]);
    csv.end_row();
  }
  sink.close();
  manifest.params = {{"codebooks", a.codebooks}, {"N", a.N}, {"snr_db", snr},
                     {"trials", a.trials}};
  if (!a.output.empty()) manifest.outputs = {a.output};
  manifest.write(manifest_path(a.manifest, a.output));
  return 0;
}

// ---------------------------------------------------------------- gain-cdf

struct GainArgs {
  std::vector<std::string> codebooks;
  int N = 32;
  std::vector<std::string> k{"0", "1", "inf"};
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  std::string output;
  std::string manifest;
};

void add_gain(CLI::App& app, GainArgs& a) {
  auto* c = app.add_subcommand("gain-cdf", "sorted selected effective gains in Rician fading");
  c->add_option("--codebook", a.codebooks, "codebook JSON files (repeatable)")->required();
  c->add_option("-N", a.N, "receive antennas")->check(CLI::PositiveNumber);
  c->add_option("-K,--k-factor", a.k, "Rician K-factors, 'inf' for pure LoS")->delimiter(',');
  c->add_option("--trials", a.trials, "channel realizations")->check(CLI::PositiveNumber);
  c->add_option("--seed", a.seed, "64-bit seed");
  c->add_option("-o,--output", a.output, "CSV path (default stdout)");
  c->add_option("--manifest", a.manifest, "manifest path");
}

int run_gain(const GainArgs& a, std::ostream& out) {
  Manifest manifest{"gain-cdf"};
  manifest.seed = a.seed;
  std::vector<double> ks;
  for (const auto& k : a.k) ks.push_back(parse_k(k));
  const auto books = load_all(a.codebooks);

  Sink sink(a.output, out);
  CsvWriter csv(sink.stream());
  std::vector<std::string> header{"k", "rank", "cdf"};
  for (std::size_t b = 0; b < books.size(); ++b) header.push_back(fmt::format("gain_{}", b + 1));
  csv.header(header);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    auto samples = gain_samples(books, a.N, ks[i], a.trials, a.seed);
    for (auto& s : samples) std::sort(s.begin(), s.end());
    for (std::size_t r = 0; r < a.trials; ++r) {
      csv.cell(a.k[i]).cell(r + 1).cell(static_cast<double>(r + 1) / a.trials);
      for (const auto& s : samples) csv.cell(s[r]);
      csv.end_row();
    }
  }
  sink.close();
  manifest.params = {{"codebooks", a.codebooks}, {"N", a.N}, {"k", a.k}, {"trials", a.trials}};
  if (!a.output.empty()) manifest.outputs = {a.output};
  manifest.write(manifest_path(a.manifest, a.output));
  return 0;
}

// ---------------------------------------------------------------- papr

struct PaprArgs {
  std::vector<std::string> codebooks;
  bool row_sparse = false;
  int T = 8;
  int M = 4;
  std::vector<int> ell{1, 2, 3, 4};
  std::vector<double> thetas;
  std::string waveform = "both";
  std::string modulation = "qam4";
  int subcarriers = 624;
  int fft_size = 1024;
  int oversampling = 8;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  bool antenna_mean = false;
  std::string selection = "random";
  int receivers = 1;
  std::string thresholds = "0:12:0.05";
  std::string output;
  std::string scatter;
  std::string manifest;
};

void add_papr(CLI::App& app, PaprArgs& a) {
  auto* c = app.add_subcommand("papr", "oversampled PAPR CCDF of precoded OFDM / DFT-s-OFDM");
  c->add_option("--codebook", a.codebooks, "codebook JSON files (repeatable)");
  c->add_flag("--row-sparse", a.row_sparse, "row-sparse precoders instead of codebooks");
  c->add_option("-T", a.T, "transmit antennas (row-sparse)")->check(CLI::PositiveNumber);
  c->add_option("-M", a.M, "streams (row-sparse)")->check(CLI::PositiveNumber);
  c->add_option("--ell", a.ell, "nonzeros per row (row-sparse)")->delimiter(',');
  c->add_option("--thetas", a.thetas, "fixed phases in radians (row-sparse)")->delimiter(',');
  c->add_option("--waveform", a.waveform, "ofdm | dfts | both")
      ->check(CLI::IsMember({"ofdm", "dfts", "both"}));
  c->add_option("--modulation", a.modulation, "qam4 | qpsk")
      ->check(CLI::IsMember({"qam4", "qpsk"}));
  c->add_option("--subcarriers", a.subcarriers, "used subcarriers")->check(CLI::PositiveNumber);
  c->add_option("--fft", a.fft_size, "FFT size")->check(CLI::PositiveNumber);
  c->add_option("--oversampling", a.oversampling, "oversampling factor")
      ->check(CLI::PositiveNumber);
  c->add_option("--trials", a.trials, "frames")->check(CLI::PositiveNumber);
  c->add_option("--seed", a.seed, "64-bit seed");
  c->add_flag("--antenna-mean", a.antenna_mean, "one sample per frame: mean over antennas");
  c->add_option("--selection", a.selection, "codeword choice per frame: random | channel")
      ->check(CLI::IsMember({"random", "channel"}));
  c->add_option("-N", a.receivers, "receive antennas for channel selection")
      ->check(CLI::PositiveNumber);
  c->add_option("--thresholds", a.thresholds, "CCDF thresholds in dB, start:stop:step");
  c->add_option("-o,--output", a.output, "CSV path (default stdout)");
  c->add_option("--scatter", a.scatter,
                "directory for Nyquist-rate time-domain samples of frame 0");
  c->add_option("--manifest", a.manifest, "manifest path");
}

struct Scheme {
  std::string label;
  std::function<PaprSamples(const WaveformConfig&)> run;
  std::function<CMatrix()> first_precoder;
  int M = 0;
};

int run_papr(const PaprArgs& a, std::ostream& out) {
  Manifest manifest{"papr"};
  manifest.seed = a.seed;
  if (a.row_sparse == !a.codebooks.empty()) {
    throw UsageError("give either --codebook files or --row-sparse");
  }
  const auto thresholds = parse_range(a.thresholds);
  std::vector<Waveform> waveforms;
  if (a.waveform != "dfts") waveforms.push_back(Waveform::Ofdm);
  if (a.waveform != "ofdm") waveforms.push_back(Waveform::DftsOfdm);

  PaprOptions options;
  options.antenna_mean = a.antenna_mean;
  options.selection = a.selection == "channel" ? Selection::Channel : Selection::Random;
  options.receive_antennas = a.receivers;

  std::vector<Scheme> schemes;
  auto books = std::make_shared<std::vector<Codebook>>(load_all(a.codebooks));
  for (std::size_t i = 0; i < books->size(); ++i) {
    const Codebook* book = &(*books)[i];
    schemes.push_back({label_of(a.codebooks[i]),
                       [=, &a](const WaveformConfig& cfg) {
                         return papr_experiment(*book, cfg, a.trials, a.seed, options);
                       },
                       [=] { return (*book)[0].matrix(); }, book->M});
  }
  if (a.row_sparse) {
    for (int ell : a.ell) {
      const RowSparseSpec spec{a.T, a.M, ell, a.thetas};
      schemes.push_back({fmt::format("ell{}", ell),
                         [=, &a](const WaveformConfig& cfg) {
                           return papr_experiment(spec, cfg, a.trials, a.seed, options);
                         },
                         [=, &a] { return row_sparse_precoder(a.T, a.M, ell, a.thetas, a.seed); },
                         a.M});
    }
  }

  Sink sink(a.output, out);
  CsvWriter csv(sink.stream());
  csv.header({"waveform", "scheme", "threshold_db", "ccdf"});
  std::vector<std::string> summary;
  for (Waveform wf : waveforms) {
    WaveformConfig cfg{a.subcarriers, a.fft_size, a.oversampling,
                       a.modulation == "qpsk" ? Modulation::Qpsk : Modulation::Qam4, wf};
    cfg.validate();
    const std::string wf_name = wf == Waveform::Ofdm ? "ofdm" : "dfts";
    for (const auto& scheme : schemes) {
      const auto samples = scheme.run(cfg);
      for (const auto& [t, p] : ccdf(samples, thresholds)) {
        csv.cell(wf_name).cell(scheme.label).cell(t).cell(p).end_row();
      }
      summary.push_back(fmt::format("{} {} papr_db@1e-2 {:.3f}", wf_name, scheme.label,
                                    ccdf_threshold_db(samples, 1e-2)));
      if (!a.scatter.empty()) {
        WaveformConfig nyquist = cfg;
        nyquist.oversampling = 1;
        fs::create_directories(a.scatter);
        const auto path =
            (fs::path(a.scatter) / fmt::format("scatter_{}_{}.csv", wf_name, scheme.label))
                .string();
        std::ofstream f(path, std::ios::binary);
        CsvWriter sc(f);
        sc.header({"re", "im"});
        const CMatrix streams = frame_streams(scheme.M, nyquist, a.seed, 0);
        for (const auto& x : antenna_signals(scheme.first_precoder(), streams, nyquist)) {
          if (x.squaredNorm() == 0.0) continue;
          for (Eigen::Index n = 0; n < x.size(); ++n) {
            sc.cell(x(n).real()).cell(x(n).imag()).end_row();
          }
        }
        if (!f) fail(ErrorCode::IoError, "cannot write '" + path + "'");
        manifest.outputs.push_back(path);
      }
    }
  }
  sink.close();
  if (!a.output.empty()) {
    for (const auto& line : summary) out << line << '\n';
    manifest.outputs.insert(manifest.outputs.begin(), a.output);
  }
  manifest.params = {{"codebooks", a.codebooks}, {"row_sparse", a.row_sparse},
                     {"T", a.T},                 {"M", a.M},
                     {"ell", a.ell},             {"thetas", a.thetas},
                     {"waveform", a.waveform},   {"modulation", a.modulation},
                     {"subcarriers", a.subcarriers}, {"fft", a.fft_size},
                     {"oversampling", a.oversampling}, {"trials", a.trials},
                     {"antenna_mean", a.antenna_mean}, {"selection", a.selection},
                     {"N", a.receivers},         {"thresholds_db", thresholds}};
  manifest.write(manifest_path(a.manifest, a.output));
  return 0;
}

// ---------------------------------------------------------------- audit

struct AuditArgs {
  int T = 4;
  int M = 2;
  int N = 32;
  std::size_t size = 22;
  std::string sweep;
  std::string method = "manopt";
  std::string output;
  std::string manifest;
};

void add_audit(CLI::App& app, AuditArgs& a) {
  auto* c = app.add_subcommand("audit", "closed-form complexity and real-variable counts");
  c->add_option("-T", a.T, "transmit antennas")->check(CLI::PositiveNumber);
  c->add_option("-M", a.M, "streams")->check(CLI::PositiveNumber);
  c->add_option("-N", a.N, "receive antennas")->check(CLI::PositiveNumber);
  c->add_option("--size", a.size, "codebook size");
  c->add_option("--sweep", a.sweep, "size range start:stop:step; emits a real-variable CSV");
  c->add_option("--method", a.method, "manopt | proposed2m (with --sweep)")
      ->check(CLI::IsMember({"manopt", "proposed2m"}));
  c->add_option("-o,--output", a.output, "output path (default stdout)");
  c->add_option("--manifest", a.manifest, "manifest path");
}

int run_audit(const AuditArgs& a, std::ostream& out) {
  Manifest manifest{"audit"};
  require(a.M < a.T, "need M < T");
  Sink sink(a.output, out);
  if (a.sweep.empty()) {
    sink.stream() << to_json(complexity_report(a.T, a.M, a.N, a.size)).dump(2) << '\n';
  } else {
    const auto method = parse_variable_method(a.method);
    CsvWriter csv(sink.stream());
    csv.header({"size", "real_variables"});
    for (double s : parse_range(a.sweep)) {
      const auto size = static_cast<std::uint64_t>(std::llround(s));
      csv.cell(static_cast<long long>(size))
          .cell(static_cast<long long>(real_variable_count(method, a.T, a.M, size)))
          .end_row();
    }
  }
  sink.close();
  manifest.params = {{"T", a.T},         {"M", a.M},           {"N", a.N},
                     {"size", a.size},   {"sweep", a.sweep},   {"method", a.method}};
  if (!a.output.empty()) manifest.outputs = {a.output};
  manifest.write(manifest_path(a.manifest, a.output));
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse Grassmannian codebook design and evaluation", "sgrass"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SGRASS_VERSION);

  DesignArgs design;
  McdArgs mcd;
  RateArgs rate;
  GainArgs gain;
  PaprArgs papr;
  AuditArgs audit;
  add_design(app, design);
  add_mcd(app, mcd);
  add_rate(app, rate);
  add_gain(app, gain);
  add_papr(app, papr);
  add_audit(app, audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "design") return run_design(design, out);
    if (name == "mcd") return run_mcd(mcd, out);
    if (name == "rate") return run_rate(rate, out);
    if (name == "gain-cdf") return run_gain(gain, out);
    if (name == "papr") return run_papr(papr, out);
    return run_audit(audit, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace sgrass::cli
