// model_io.hpp
// Versioned binary model container.
//
// Layout (all integers and doubles little-endian, doubles IEEE-754 64-bit):
//   magic "CMXCRF" | u32 version (=1)
//   u32 label count | per label: u32 byte length + UTF-8 bytes
//   u64 feature count | per feature name: u32 byte length + bytes
//   u64 nnz | nnz x (u32 feature id, u32 label id, f64 weight), (f, y) order
//   f64 trans[L*L] | f64 bos[L] | f64 eos[L]
//   i32 window | i32 max_ngram | i32 min_count | u8 use_lang

#ifndef CMX_MODEL_IO_HPP_
#define CMX_MODEL_IO_HPP_

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <set>
#include <string>
#include <string_view>

#include "cmx/crf_model.hpp"
#include "cmx/error.hpp"

namespace cmx {

namespace detail {

constexpr std::string_view kModelMagic = "CMXCRF";
constexpr std::uint32_t kModelVersion = 1;

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFF));
}

inline void put_u64(std::string& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) out.push_back(static_cast<char>((v >> (8 * k)) & 0xFF));
}

inline void put_f64(std::string& out, double v) {
  put_u64(out, std::bit_cast<std::uint64_t>(v));
}

inline void put_string(std::string& out, std::string_view s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.append(s);
}

class ByteReader {
 public:
  explicit ByteReader(std::string_view data) : data_(data) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int k = 3; k >= 0; --k) v = (v << 8) | static_cast<unsigned char>(data_[pos_ + k]);
    pos_ += 4;
    return v;
  }

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int k = 7; k >= 0; --k) v = (v << 8) | static_cast<unsigned char>(data_[pos_ + k]);
    pos_ += 8;
    return v;
  }

  double f64() { return std::bit_cast<double>(u64()); }

  std::string str() {
    std::uint32_t len = u32();
    need(len);
    std::string s(data_.substr(pos_, len));
    pos_ += len;
    return s;
  }

  std::string_view raw(std::size_t count) {
    need(count);
    std::string_view s = data_.substr(pos_, count);
    pos_ += count;
    return s;
  }

  bool exhausted() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t count) const {
    if (count > data_.size() - pos_) throw Error("truncated model file");
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string save_model(const CrfModel& model) {
  const int L = model.num_labels();
  const int F = model.features.size();
  if (L == 0) throw Error("model has no labels");
  if (model.trans.size() != static_cast<std::size_t>(L) * L ||
      model.bos.size() != static_cast<std::size_t>(L) ||
      model.eos.size() != static_cast<std::size_t>(L) ||
      model.state_weights.size() != static_cast<std::size_t>(F)) {
    throw Error("model weight blocks have inconsistent sizes");
  }

  std::string out;
  out.append(detail::kModelMagic);
  detail::put_u32(out, detail::kModelVersion);

  detail::put_u32(out, static_cast<std::uint32_t>(L));
  for (const std::string& label : model.labels) detail::put_string(out, label);

  detail::put_u64(out, static_cast<std::uint64_t>(F));
  for (const std::string& name : model.features.names()) detail::put_string(out, name);

  std::uint64_t nnz = 0;
  for (const auto& row : model.state_weights) nnz += row.size();
  detail::put_u64(out, nnz);
  for (int f = 0; f < F; ++f) {
    for (const auto& [label, weight] : model.state_weights[static_cast<std::size_t>(f)]) {
      detail::put_u32(out, static_cast<std::uint32_t>(f));
      detail::put_u32(out, static_cast<std::uint32_t>(label));
      detail::put_f64(out, weight);
    }
  }

  for (double w : model.trans) detail::put_f64(out, w);
  for (double w : model.bos) detail::put_f64(out, w);
  for (double w : model.eos) detail::put_f64(out, w);

  detail::put_u32(out, static_cast<std::uint32_t>(model.config.window));
  detail::put_u32(out, static_cast<std::uint32_t>(model.config.max_ngram));
  detail::put_u32(out, static_cast<std::uint32_t>(model.config.min_count));
  out.push_back(model.config.use_lang ? '\x01' : '\x00');
  return out;
}

inline void save_model(const CrfModel& model, std::ostream& out) {
  const std::string bytes = save_model(model);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("failed to write model");
}

inline CrfModel load_model_bytes(std::string_view bytes) {
  detail::ByteReader reader(bytes);
  if (reader.raw(detail::kModelMagic.size()) != detail::kModelMagic) {
    throw Error("bad magic: not a CMXCRF model file");
  }
  const std::uint32_t version = reader.u32();
  if (version != detail::kModelVersion) {
    throw Error("unsupported model format version " + std::to_string(version));
  }

  CrfModel model;
  const std::uint32_t L = reader.u32();
  if (L == 0) throw Error("model has no labels");
  std::set<std::string> seen_labels;
  for (std::uint32_t i = 0; i < L; ++i) {
    model.labels.push_back(reader.str());
    if (!seen_labels.insert(model.labels.back()).second) {
      throw Error("duplicate label '" + model.labels.back() + "' in model file");
    }
  }

  const std::uint64_t F = reader.u64();
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(F));
  for (std::uint64_t i = 0; i < F; ++i) names.push_back(reader.str());
  model.features = FeatureIndex::from_names(std::move(names));

  model.state_weights.resize(static_cast<std::size_t>(F));
  const std::uint64_t nnz = reader.u64();
  for (std::uint64_t i = 0; i < nnz; ++i) {
    const std::uint32_t f = reader.u32();
    const std::uint32_t y = reader.u32();
    const double w = reader.f64();
    if (f >= F) throw Error("state weight references feature id out of range");
    if (y >= L) throw Error("state weight references label id out of range");
    if (!std::isfinite(w)) throw Error("non-finite state weight in model file");
    model.state_weights[static_cast<std::size_t>(f)].emplace_back(static_cast<int>(y), w);
  }
  for (auto& row : model.state_weights) {
    std::sort(row.begin(), row.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i].first == row[i - 1].first) {
        throw Error("duplicate state weight entry in model file");
      }
    }
  }

  auto read_block = [&](std::size_t count, std::vector<double>& target) {
    target.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      target[i] = reader.f64();
      if (!std::isfinite(target[i])) throw Error("non-finite weight in model file");
    }
  };
  read_block(static_cast<std::size_t>(L) * L, model.trans);
  read_block(L, model.bos);
  read_block(L, model.eos);

  model.config.window = static_cast<int>(reader.u32());
  model.config.max_ngram = static_cast<int>(reader.u32());
  model.config.min_count = static_cast<int>(reader.u32());
  const std::string_view flag = reader.raw(1);
  if (flag[0] != '\x00' && flag[0] != '\x01') throw Error("corrupt feature config in model file");
  model.config.use_lang = flag[0] == '\x01';
  if (model.config.window < 0 || model.config.max_ngram < 1 || model.config.min_count < 1) {
    throw Error("corrupt feature config in model file");
  }

  if (!reader.exhausted()) throw Error("trailing data in model file");
  return model;
}

inline CrfModel load_model(std::istream& in) {
  std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return load_model_bytes(bytes);
}

}  // namespace cmx

#endif  // CMX_MODEL_IO_HPP_
