#include "atlas/knowledge_base.hpp"

#include <algorithm>
#include <mutex>

namespace atlas {

std::string_view to_string(EntrySource s) {
  return s == EntrySource::Initial ? "initial" : "detected";
}

std::string_view to_string(KBMode m) { return m == KBMode::Fixed ? "fixed" : "growing"; }

KBMode kb_mode_from(std::string_view s) {
  if (s == "fixed") return KBMode::Fixed;
  if (s == "growing") return KBMode::Growing;
  throw std::invalid_argument("unknown kb mode: " + std::string(s));
}

KnowledgeBase::KnowledgeBase(const std::vector<KBEntry>& initial, KBMode mode) : mode_(mode) {
  for (const auto& e : initial) {
    KBEntry entry = e;
    entry.source = EntrySource::Initial;
    entry.detected_at.reset();
    entry.updated_at.reset();
    entry.order = next_order_++;
    if (!entries_.emplace(entry.name, entry).second) throw DuplicateNameError(entry.name);
  }
}

KnowledgeBase::KnowledgeBase(const KnowledgeBase& other) {
  std::shared_lock lock(other.mutex_);
  entries_ = other.entries_;
  mode_ = other.mode_;
  next_order_ = other.next_order_;
}

KnowledgeBase& KnowledgeBase::operator=(const KnowledgeBase& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_);
  std::shared_lock other_lock(other.mutex_);
  entries_ = other.entries_;
  mode_ = other.mode_;
  next_order_ = other.next_order_;
  return *this;
}

bool KnowledgeBase::insert(std::string_view name, const Pose& pose, double time) {
  if (mode_ == KBMode::Fixed) return false;
  std::unique_lock lock(mutex_);
  auto it = entries_.find(name);
  if (it == entries_.end()) {
    KBEntry e{std::string(name), pose, EntrySource::Detected, time, time, next_order_++};
    entries_.emplace(e.name, std::move(e));
    return true;
  }
  if (it->second.source == EntrySource::Initial) return false;
  it->second.pose = pose;
  it->second.updated_at = time;
  return true;
}

std::optional<Pose> KnowledgeBase::lookup(std::string_view name) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second.pose;
}

std::optional<KBEntry> KnowledgeBase::entry(std::string_view name) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool KnowledgeBase::contains(std::string_view name) const {
  std::shared_lock lock(mutex_);
  return entries_.find(name) != entries_.end();
}

std::size_t KnowledgeBase::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::vector<KBEntry> KnowledgeBase::ordered_locked() const {
  std::vector<KBEntry> out;
  out.reserve(entries_.size());
  for (const auto& [_, e] : entries_) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const KBEntry& a, const KBEntry& b) {
    if (a.source != b.source) return a.source == EntrySource::Initial;
    if (a.source == EntrySource::Detected && *a.detected_at != *b.detected_at) {
      return *a.detected_at < *b.detected_at;
    }
    return a.order < b.order;
  });
  return out;
}

std::vector<KBEntry> KnowledgeBase::entries() const {
  std::shared_lock lock(mutex_);
  return ordered_locked();
}

std::vector<std::string> KnowledgeBase::snapshot() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> names;
  for (auto& e : ordered_locked()) names.push_back(std::move(e.name));
  return names;
}

}  // namespace atlas
