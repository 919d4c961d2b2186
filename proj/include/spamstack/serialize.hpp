#pragma once

#include <filesystem>
#include <iosfwd>

#include "spamstack/members.hpp"

namespace spamstack {

// Versioned little-endian binary format, round-trip exact.
//
//   NaiveBayesModel:  magic "SSNB", u32 version = 1, u32 attribute count,
//                     f64 smoothing, f64 prior[2], f64 cond column-major
//                     (legitimate column then spam column).
//   MemoryBasedModel: magic "SSMB", u32 version = 1, u32 n, u32 d,
//                     u32 k, u8 semantics, i32 binary_dims, u8 labels[n],
//                     f64 weights[d], f64 instances row-major.
//
// Loaders throw std::runtime_error on bad magic, version, or truncation.

void save_nb_model(const NaiveBayesModel& model, std::ostream& out);
void save_nb_model(const NaiveBayesModel& model, const std::filesystem::path& path);
NaiveBayesModel load_nb_model(std::istream& in);
NaiveBayesModel load_nb_model(const std::filesystem::path& path);

void save_memory_model(const MemoryBasedModel& model, std::ostream& out);
void save_memory_model(const MemoryBasedModel& model, const std::filesystem::path& path);
MemoryBasedModel load_memory_model(std::istream& in);
MemoryBasedModel load_memory_model(const std::filesystem::path& path);

}  // namespace spamstack
