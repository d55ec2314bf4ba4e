#include "atlas/vocabulary.hpp"

#include <algorithm>
#include <array>

namespace atlas {

namespace {

constexpr std::array<std::string_view, 80> kClasses = {
    "person",        "bicycle",      "car",           "motorcycle",    "airplane",
    "bus",           "train",        "truck",         "boat",          "traffic light",
    "fire hydrant",  "stop sign",    "parking meter", "bench",         "bird",
    "cat",           "dog",          "horse",         "sheep",         "cow",
    "elephant",      "bear",         "zebra",         "giraffe",       "backpack",
    "umbrella",      "handbag",      "tie",           "suitcase",      "frisbee",
    "skis",          "snowboard",    "sports ball",   "kite",          "baseball bat",
    "baseball glove", "skateboard",  "surfboard",     "tennis racket", "bottle",
    "wine glass",    "cup",          "fork",          "knife",         "spoon",
    "bowl",          "banana",       "apple",         "sandwich",      "orange",
    "broccoli",      "carrot",       "hot dog",       "pizza",         "donut",
    "cake",          "chair",        "couch",         "potted plant",  "bed",
    "dining table",  "toilet",       "tv",            "laptop",        "mouse",
    "remote",        "keyboard",     "cell phone",    "microwave",     "oven",
    "toaster",       "sink",         "refrigerator",  "book",          "clock",
    "vase",          "scissors",     "teddy bear",    "hair drier",    "toothbrush",
};

constexpr std::array<std::string_view, 24> kLandmarks = {
    "kitchen",      "living room",  "kids room",   "bedroom",     "bathroom",
    "garage",       "hallway",      "dining room", "laundry room", "lounge",
    "lobby",        "office",       "meeting room", "reception",  "break room",
    "storage room", "front door",   "back door",   "vending machine", "elevator",
    "copy room",    "server room",  "patio",       "study",
};

}  // namespace

std::span<const std::string_view> detector_classes() { return kClasses; }

bool is_detector_class(std::string_view name) {
  return std::find(kClasses.begin(), kClasses.end(), name) != kClasses.end();
}

std::span<const std::string_view> default_landmark_names() { return kLandmarks; }

}  // namespace atlas
