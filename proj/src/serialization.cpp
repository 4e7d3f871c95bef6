#include "lastsuccess/serialization.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lastsuccess {

using nlohmann::json;

std::string instance_to_json(const Instance& instance) {
  json j;
  j["n"] = instance.size();
  j["p"] = std::vector<double>(instance.probs().begin(), instance.probs().end());
  return j.dump();
}

Instance instance_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("instance JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("p")) {
    throw std::invalid_argument("instance JSON needs fields \"n\" and \"p\"");
  }
  if (!j["n"].is_number_integer() || !j["p"].is_array()) {
    throw std::invalid_argument("instance JSON: \"n\" must be an integer, \"p\" an array");
  }
  const auto n = j["n"].get<long long>();
  std::vector<double> probs;
  for (const auto& v : j["p"]) {
    if (!v.is_number()) throw std::invalid_argument("instance JSON: non-numeric probability");
    probs.push_back(v.get<double>());
  }
  if (n < 1 || static_cast<std::size_t>(n) != probs.size()) {
    throw std::invalid_argument("instance JSON: \"n\" does not match length of \"p\"");
  }
  return Instance(std::move(probs));
}

void save_instance(const Instance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << instance_to_json(instance) << '\n';
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return instance_from_json(buf.str());
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b{};
  for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xff);
  out.write(b.data(), b.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw std::runtime_error("sample dump: truncated header");
  }
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= std::uint64_t{b[k]} << (8 * k);
  return v;
}

}  // namespace

void write_samples(std::ostream& out, const SampleMatrix& samples) {
  put_u64(out, samples.rows());
  put_u64(out, samples.cols());
  const auto bits = samples.bits();
  std::vector<char> packed((bits.size() + 7) / 8, 0);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) packed[k / 8] = static_cast<char>(packed[k / 8] | (1 << (k % 8)));
  }
  out.write(packed.data(), static_cast<std::streamsize>(packed.size()));
}

SampleMatrix read_samples(std::istream& in) {
  const auto m = get_u64(in);
  const auto n = get_u64(in);
  if (m == 0 || n == 0 || m > (std::uint64_t{1} << 40) / n) {
    throw std::runtime_error("sample dump: bad dimensions");
  }
  std::vector<char> packed((m * n + 7) / 8);
  if (!in.read(packed.data(), static_cast<std::streamsize>(packed.size()))) {
    throw std::runtime_error("sample dump: truncated body");
  }
  std::vector<std::uint8_t> bits(m * n);
  for (std::size_t k = 0; k < bits.size(); ++k) {
    bits[k] = (static_cast<unsigned char>(packed[k / 8]) >> (k % 8)) & 1u;
  }
  return SampleMatrix(m, n, std::move(bits));
}

}  // namespace lastsuccess
