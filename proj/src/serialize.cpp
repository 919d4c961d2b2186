#include "spamstack/serialize.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace spamstack {

namespace {

constexpr std::uint32_t kVersion = 1;

void write_bytes(std::ostream& out, const void* data, std::size_t n) {
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  write_bytes(out, b, 4);
}

void write_i32(std::ostream& out, std::int32_t v) { write_u32(out, static_cast<std::uint32_t>(v)); }

void write_u8(std::ostream& out, std::uint8_t v) { write_bytes(out, &v, 1); }

void write_f64(std::ostream& out, double v) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(bits >> (8 * i));
  write_bytes(out, b, 8);
}

void read_bytes(std::istream& in, void* data, std::size_t n) {
  in.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
  if (in.gcount() != static_cast<std::streamsize>(n)) {
    throw std::runtime_error("truncated model file");
  }
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  read_bytes(in, b, 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

std::int32_t read_i32(std::istream& in) { return static_cast<std::int32_t>(read_u32(in)); }

std::uint8_t read_u8(std::istream& in) {
  std::uint8_t v;
  read_bytes(in, &v, 1);
  return v;
}

double read_f64(std::istream& in) {
  unsigned char b[8];
  read_bytes(in, b, 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

void check_header(std::istream& in, const char magic[4]) {
  char got[4];
  read_bytes(in, got, 4);
  if (std::memcmp(got, magic, 4) != 0) throw std::runtime_error("bad model magic");
  const std::uint32_t version = read_u32(in);
  if (version != kVersion) {
    throw std::runtime_error("unsupported model version " + std::to_string(version));
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write model file: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read model file: " + path.string());
  return in;
}

}  // namespace

void save_nb_model(const NaiveBayesModel& model, std::ostream& out) {
  write_bytes(out, "SSNB", 4);
  write_u32(out, kVersion);
  write_u32(out, static_cast<std::uint32_t>(model.attribute_count()));
  write_f64(out, model.smoothing);
  write_f64(out, model.prior(0));
  write_f64(out, model.prior(1));
  for (int c = 0; c < 2; ++c) {
    for (Eigen::Index i = 0; i < model.cond.rows(); ++i) write_f64(out, model.cond(i, c));
  }
  if (!out) throw std::runtime_error("model write failed");
}

void save_nb_model(const NaiveBayesModel& model, const std::filesystem::path& path) {
  auto out = open_out(path);
  save_nb_model(model, out);
}

NaiveBayesModel load_nb_model(std::istream& in) {
  check_header(in, "SSNB");
  const std::uint32_t m = read_u32(in);
  NaiveBayesModel model;
  model.smoothing = read_f64(in);
  model.prior(0) = read_f64(in);
  model.prior(1) = read_f64(in);
  model.cond.resize(static_cast<Eigen::Index>(m), 2);
  for (int c = 0; c < 2; ++c) {
    for (Eigen::Index i = 0; i < model.cond.rows(); ++i) model.cond(i, c) = read_f64(in);
  }
  return model;
}

NaiveBayesModel load_nb_model(const std::filesystem::path& path) {
  auto in = open_in(path);
  return load_nb_model(in);
}

void save_memory_model(const MemoryBasedModel& model, std::ostream& out) {
  write_bytes(out, "SSMB", 4);
  write_u32(out, kVersion);
  write_u32(out, static_cast<std::uint32_t>(model.size()));
  write_u32(out, static_cast<std::uint32_t>(model.dims()));
  write_u32(out, static_cast<std::uint32_t>(model.k));
  write_u8(out, model.semantics == KSemantics::instances ? 1 : 0);
  write_i32(out, model.binary_dims);
  for (Category label : model.labels) write_u8(out, label == Category::spam ? 1 : 0);
  for (Eigen::Index t = 0; t < model.weights.size(); ++t) write_f64(out, model.weights(t));
  for (Eigen::Index r = 0; r < model.instances.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.instances.cols(); ++c) write_f64(out, model.instances(r, c));
  }
  if (!out) throw std::runtime_error("model write failed");
}

void save_memory_model(const MemoryBasedModel& model, const std::filesystem::path& path) {
  auto out = open_out(path);
  save_memory_model(model, out);
}

MemoryBasedModel load_memory_model(std::istream& in) {
  check_header(in, "SSMB");
  const std::uint32_t n = read_u32(in);
  const std::uint32_t d = read_u32(in);
  MemoryBasedModel model;
  model.k = static_cast<int>(read_u32(in));
  model.semantics = read_u8(in) == 1 ? KSemantics::instances : KSemantics::distance_bands;
  model.binary_dims = read_i32(in);
  model.labels.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    model.labels[i] = read_u8(in) == 1 ? Category::spam : Category::legitimate;
  }
  model.weights.resize(static_cast<Eigen::Index>(d));
  for (Eigen::Index t = 0; t < model.weights.size(); ++t) model.weights(t) = read_f64(in);
  model.instances.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index r = 0; r < model.instances.rows(); ++r) {
    for (Eigen::Index c = 0; c < model.instances.cols(); ++c) model.instances(r, c) = read_f64(in);
  }
  return model;
}

MemoryBasedModel load_memory_model(const std::filesystem::path& path) {
  auto in = open_in(path);
  return load_memory_model(in);
}

}  // namespace spamstack
