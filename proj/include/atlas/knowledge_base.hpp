#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "atlas/pose.hpp"

namespace atlas {

enum class EntrySource { Initial, Detected };
enum class KBMode { Fixed, Growing };

std::string_view to_string(EntrySource s);
std::string_view to_string(KBMode m);
KBMode kb_mode_from(std::string_view s);

struct KBEntry {
  std::string name;
  Pose pose;
  EntrySource source = EntrySource::Initial;
  std::optional<double> detected_at;  // first detection; absent for Initial
  std::optional<double> updated_at;   // last accepted write
  std::uint64_t order = 0;

  friend bool operator==(const KBEntry&, const KBEntry&) = default;
};

class DuplicateNameError : public std::invalid_argument {
 public:
  explicit DuplicateNameError(const std::string& name)
      : std::invalid_argument("duplicate knowledge base entry: " + name) {}
};

/// Named landmarks and detected objects. Every operation takes the internal
/// lock, so the detector and the executor can share one instance.
class KnowledgeBase {
 public:
  KnowledgeBase() = default;
  KnowledgeBase(const std::vector<KBEntry>& initial, KBMode mode);
  KnowledgeBase(const KnowledgeBase& other);
  KnowledgeBase& operator=(const KnowledgeBase& other);

  /// Growing: upsert as Detected unless the name is an Initial landmark.
  /// Fixed: never changes anything. Returns whether the write was applied.
  bool insert(std::string_view name, const Pose& pose, double time);

  std::optional<Pose> lookup(std::string_view name) const;
  std::optional<KBEntry> entry(std::string_view name) const;
  bool contains(std::string_view name) const;

  /// Initial entries in insertion order, then Detected by first detection.
  std::vector<std::string> snapshot() const;
  std::vector<KBEntry> entries() const;

  KBMode mode() const { return mode_; }
  std::size_t size() const;

 private:
  std::vector<KBEntry> ordered_locked() const;

  mutable std::shared_mutex mutex_;
  std::map<std::string, KBEntry, std::less<>> entries_;
  KBMode mode_ = KBMode::Growing;
  std::uint64_t next_order_ = 0;
};

}  // namespace atlas
