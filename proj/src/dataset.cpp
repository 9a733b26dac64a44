#include "ceig/dataset.hpp"

#include <cctype>
#include <stdexcept>
#include <vector>

namespace ceig {

namespace {

NamedTensor make(const char* key, std::initializer_list<TensorEntry> entries,
                 PublishedValues published) {
  std::vector<TensorEntry> v(entries);
  return NamedTensor{key, PiezoTensor::build(3, v, SymmetrizationPolicy::strict(), key),
                     published};
}

std::vector<NamedTensor> build_all() {
  std::vector<NamedTensor> all;
  all.push_back(make("VFeSb",
                     {{1, 2, 3, -3.68180677}, {2, 1, 3, -3.68180677}, {3, 1, 2, -3.68180677}},
                     {7.3636, 7.3636, 4.2514}));
  all.push_back(make("SiO2",
                     {{1, 1, 1, -0.13685},
                      {1, 2, 2, 0.13685},
                      {2, 1, 2, 0.13685},
                      {1, 2, 3, -0.009715},
                      {2, 1, 3, 0.009715}},
                     {0.2882, 0.2834, 0.1375}));
  all.push_back(make("Cr2AgBiO8",
                     {{1, 2, 3, -0.22163},
                      {2, 1, 3, -0.22163},
                      {1, 1, 3, 2.608665},
                      {2, 2, 3, -2.608665},
                      {3, 1, 1, 0.152485},
                      {3, 2, 2, -0.152485},
                      {3, 1, 2, -0.37153}},
                     {5.6606, 5.6606, 2.6258}));
  all.push_back(make("RbTaO3",
                     {{1, 1, 3, -8.40955},
                      {2, 2, 3, -8.40955},
                      {2, 2, 2, -5.412525},
                      {2, 1, 2, 5.412525},
                      {2, 1, 1, 5.412525},
                      {3, 1, 1, -4.3031},
                      {3, 2, 2, -4.3031},
                      {3, 3, 3, -5.14766}},
                     {30.0911, 23.5377, 12.4234}));
  all.push_back(make("NaBiS2",
                     {{1, 1, 3, -8.90808},
                      {2, 2, 3, -0.00842},
                      {3, 1, 1, -7.11526},
                      {3, 2, 2, -0.6222},
                      {3, 3, 3, -7.93831}},
                     {17.3288, 16.8548, 11.6674}));
  all.push_back(make("LiBiB2O5",
                     {{1, 2, 3, 2.35682},
                      {1, 1, 2, 0.34929},
                      {2, 1, 1, 0.16101},
                      {2, 2, 2, 0.12562},
                      {2, 3, 3, 0.1361},
                      {2, 1, 3, -0.05587},
                      {3, 2, 3, 6.91074},
                      {3, 1, 2, 2.57812}},
                     {15.2911, 12.3206, 7.7376}));
  all.push_back(make("KBi2F7",
                     {{1, 1, 1, 12.64393},
                      {1, 2, 2, 1.08802},
                      {1, 3, 3, 4.14350},
                      {1, 2, 3, 1.59052},
                      {1, 1, 3, 1.96801},
                      {1, 1, 2, 0.22465},
                      {2, 1, 1, 2.59187},
                      {2, 2, 2, 0.08263},
                      {2, 3, 3, 0.81041},
                      {2, 2, 3, 0.51165},
                      {2, 1, 3, 0.71432},
                      {2, 1, 2, 0.10570},
                      {3, 1, 1, 1.51254},
                      {3, 2, 2, 0.68235},
                      {3, 3, 3, -0.23019},
                      {3, 2, 3, 0.19013},
                      {3, 1, 3, 0.39030},
                      {3, 1, 2, 0.08381}},
                     {22.6896, 20.2351, 13.5021}));
  all.push_back(make("BaNiO3",
                     {{1, 1, 3, 0.038385},
                      {2, 2, 3, 0.038385},
                      {3, 1, 1, 6.89822},
                      {3, 2, 2, 6.89822},
                      {3, 3, 3, 27.4628}},
                     {38.8162, 35.3787, 27.4628}));
  return all;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

std::span<const NamedTensor> dataset_list() {
  static const std::vector<NamedTensor> all = build_all();
  return all;
}

const NamedTensor& dataset_get(std::string_view key) {
  const std::string want = lower(key);
  for (const NamedTensor& t : dataset_list()) {
    if (lower(t.key) == want) return t;
  }
  std::string known;
  for (const NamedTensor& t : dataset_list()) {
    if (!known.empty()) known += ", ";
    known += t.key;
  }
  throw std::invalid_argument("unknown dataset key '" + std::string(key) + "' (known: " + known +
                              ")");
}

}  // namespace ceig
