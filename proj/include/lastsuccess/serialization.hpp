// File formats for instances and sample matrices.
//
// Instance JSON:  {"n": <int>, "p": [<float>, ...]} with exactly n entries.
// Doubles are written in shortest round-trip form, so a write/read cycle
// reproduces every probability bit for bit.
//
// SampleMatrix binary dump: m and n as little-endian uint64, followed by
// the m*n entries in row-major order packed 8 per byte, least significant
// bit first. The final byte is zero-padded.
#pragma once

#include <iosfwd>
#include <string>

#include "lastsuccess/core.hpp"

namespace lastsuccess {

std::string instance_to_json(const Instance& instance);
/// Throws std::invalid_argument on malformed input or an n/p mismatch.
Instance instance_from_json(const std::string& text);

void save_instance(const Instance& instance, const std::string& path);
Instance load_instance(const std::string& path);

void write_samples(std::ostream& out, const SampleMatrix& samples);
SampleMatrix read_samples(std::istream& in);

}  // namespace lastsuccess
