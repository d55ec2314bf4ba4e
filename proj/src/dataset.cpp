#include "atlas/dataset.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <random>

#include "atlas/planner.hpp"
#include "atlas/vocabulary.hpp"

namespace atlas {

namespace {

// Surface variation tables. Fillers never contain the planner's trigger
// phrases, and every suffix opens with a clause break.
constexpr std::array<std::string_view, 9> kNavPrefixes = {
    "", "please ", "hey robot, ", "robot, ", "i need you to ",
    "could you ", "when you are ready, ", "right now ", "quickly "};
constexpr std::array<std::string_view, 2> kNavVerbs = {"go to", "navigate to"};
constexpr std::array<std::string_view, 9> kNavSuffixes = {
    "", " to check if the delivery truck is still here", " and wait there",
    " and look around", " to see if anyone is there", ". i will meet you there",
    " then stop", ", thanks", " and report back"};

constexpr std::array<std::string_view, 10> kContexts = {
    "", "i'm hungry ", "i'm hungry, ", "i'm feeling lonely, ",
    "guests are here and they are thirsty ", "my son forgot his toy, ",
    "it is getting late, ", "please ", "when you have a moment, ", "the meeting starts soon, "};
constexpr std::array<std::string_view, 4> kCarryVerbs = {"bring", "take", "move", "carry"};
constexpr std::array<std::string_view, 3> kFetchVerbs = {"bring", "take", "carry"};
constexpr std::array<std::string_view, 3> kGrabJoiners = {"", "and ", "then "};
constexpr std::array<std::string_view, 6> kManipSuffixes = {
    "", ", please", " and come back", " then return", ". thank you", "!"};
constexpr std::array<std::string_view, 3> kEndings = {"", ".", "!"};

struct Vocabulary {
  std::vector<std::string> classes;
  std::vector<std::string> landmarks;
};

bool usable(const std::string& name) {
  const std::string padded = " " + name + " ";
  for (auto bad : {" and ", " to ", " then ", " it "}) {
    if (padded.find(bad) != std::string::npos) return false;
  }
  return true;
}

std::vector<std::string> clean(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    auto n = try_normalize_entity(r);
    if (n && usable(*n) && std::find(out.begin(), out.end(), *n) == out.end()) out.push_back(*n);
  }
  return out;
}

class Sampler {
 public:
  Sampler(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    rng_.seed(seq);
  }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool coin(unsigned percent) { return below(100) < percent; }
  template <class C>
  const auto& pick(const C& c) {
    return c[below(c.size())];
  }

 private:
  std::mt19937_64 rng_;
};

std::string article_for(std::string_view noun) {
  return std::string(std::string_view("aeiou").find(noun.front()) != std::string_view::npos ? "an " : "a ");
}

void capitalize(std::string& s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
}

std::string header_for(Sampler& rng, const Vocabulary& vocab, std::vector<std::string> must) {
  std::vector<std::string> landmarks = vocab.landmarks;
  std::vector<std::string> entities;
  const std::size_t n_landmarks = std::min<std::size_t>(landmarks.size(), 2 + rng.below(5));
  for (std::size_t i = 0; i < n_landmarks; ++i) {
    const auto j = i + rng.below(landmarks.size() - i);
    std::swap(landmarks[i], landmarks[j]);
    entities.push_back(landmarks[i]);
  }
  const std::size_t n_objects = rng.below(5);
  for (std::size_t i = 0; i < n_objects; ++i) {
    const auto& c = rng.pick(vocab.classes);
    if (std::find(entities.begin(), entities.end(), c) == entities.end()) entities.push_back(c);
  }
  for (auto& m : must) {
    if (std::find(entities.begin(), entities.end(), m) == entities.end()) entities.push_back(std::move(m));
  }
  return render_system_header(entities);
}

DatasetRecord make_record(const Vocabulary& vocab, std::uint64_t seed, std::uint64_t index) {
  Sampler rng(seed, index);
  DatasetRecord rec;
  auto article = [&] { return rng.coin(75) ? std::string("the ") : std::string(); };

  if (rng.coin(50)) {
    rec.skeleton = Skeleton::Navigation;
    const auto& place = rng.coin(80) ? rng.pick(vocab.landmarks) : rng.pick(vocab.classes);
    std::string p = std::string(rng.pick(kNavPrefixes)) + std::string(rng.pick(kNavVerbs)) + " " +
                    article() + place + std::string(rng.pick(kNavSuffixes)) +
                    std::string(rng.pick(kEndings));
    if (rng.coin(60)) capitalize(p);
    rec.prompt = std::move(p);
    rec.expected_plan = Plan{{{Action::Navigate, place}}};
    rec.system_header = header_for(rng, vocab, {place});
    return rec;
  }

  rec.skeleton = Skeleton::Manipulation;
  const auto& object = rng.pick(vocab.classes);
  std::string dest;
  do {
    dest = rng.coin(70) ? rng.pick(vocab.landmarks) : rng.pick(vocab.classes);
  } while (dest == object);

  std::string p;
  std::string source;
  if (rng.coin(40)) {
    source = rng.pick(vocab.landmarks);
    p = std::string(rng.pick(kNavPrefixes)) + "go to " + article() + source + " " +
        std::string(rng.pick(kGrabJoiners)) + "grab " +
        (rng.coin(50) ? article_for(object) : std::string("the ")) + object + " and " +
        std::string(rng.pick(kFetchVerbs)) + " it to " + article() + dest;
  } else {
    source = object;
    p = std::string(rng.pick(kContexts)) + std::string(rng.pick(kCarryVerbs)) + " the " + object +
        " to " + article() + dest;
  }
  p += std::string(rng.pick(kManipSuffixes)) + std::string(rng.pick(kEndings));
  if (rng.coin(60)) capitalize(p);
  rec.prompt = std::move(p);
  rec.expected_plan =
      Plan{{{Action::Navigate, source}, {Action::Grab, object}, {Action::Navigate, dest}, SubTask::drop()}};
  rec.system_header = header_for(rng, vocab, {source, object, dest});
  return rec;
}

Vocabulary checked_vocabulary(const DatasetSpec& spec) {
  if (spec.n_total < 2) throw std::invalid_argument("n_total must be at least 2");
  if (!(spec.split_ratio > 0.0 && spec.split_ratio < 1.0)) {
    throw std::invalid_argument("split_ratio must be in (0, 1)");
  }
  Vocabulary v{clean(spec.class_names), clean(spec.landmark_names)};
  if (v.classes.size() < 2) throw InsufficientVocabulary("need at least two usable class names");
  if (v.landmarks.empty()) throw InsufficientVocabulary("need at least one usable landmark name");
  return v;
}

Dataset split(std::vector<DatasetRecord> records, double ratio) {
  const auto n = records.size();
  auto n_train = static_cast<std::size_t>(std::llround(static_cast<double>(n) * ratio));
  n_train = std::clamp<std::size_t>(n_train, 1, n - 1);
  Dataset d;
  d.train.assign(std::make_move_iterator(records.begin()),
                 std::make_move_iterator(records.begin() + static_cast<std::ptrdiff_t>(n_train)));
  d.test.assign(std::make_move_iterator(records.begin() + static_cast<std::ptrdiff_t>(n_train)),
                std::make_move_iterator(records.end()));
  return d;
}

}  // namespace

std::string_view to_string(Skeleton s) {
  return s == Skeleton::Navigation ? "navigation" : "manipulation";
}

Dataset generate_dataset_serial(const DatasetSpec& spec) {
  const auto vocab = checked_vocabulary(spec);
  std::vector<DatasetRecord> records;
  records.reserve(spec.n_total);
  for (std::size_t i = 0; i < spec.n_total; ++i) records.push_back(make_record(vocab, spec.seed, i));
  return split(std::move(records), spec.split_ratio);
}

Dataset generate_dataset(const DatasetSpec& spec) {
  const auto vocab = checked_vocabulary(spec);
  std::vector<DatasetRecord> records(spec.n_total);
  const auto n = static_cast<std::int64_t>(spec.n_total);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    records[static_cast<std::size_t>(i)] = make_record(vocab, spec.seed, static_cast<std::uint64_t>(i));
  }
  return split(std::move(records), spec.split_ratio);
}

DatasetSpec default_dataset_spec(std::size_t n_total, double split_ratio, std::uint64_t seed) {
  DatasetSpec spec;
  for (auto c : detector_classes()) spec.class_names.emplace_back(c);
  for (auto l : default_landmark_names()) spec.landmark_names.emplace_back(l);
  spec.n_total = n_total;
  spec.split_ratio = split_ratio;
  spec.seed = seed;
  return spec;
}

}  // namespace atlas
