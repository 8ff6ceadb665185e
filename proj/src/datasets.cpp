#include "classify/datasets.hpp"

namespace classify {

const std::vector<double>& small10_data() {
  static const std::vector<double> data = {-1.522, -1.292, -0.856, -0.104, 2.388,
                                           3.080,  3.313,  3.415,  3.922,  4.194};
  return data;
}

const std::vector<double>& galaxy_data() {
  // Roeder (1990), 82 galaxy recession velocities from the Corona Borealis
  // survey, here divided by 1000 (velocity 26960 corrects the transcription
  // error found in some copies of the data, which print 26690).
  static const std::vector<double> data = [] {
    static constexpr int kms[] = {
        9172,  9350,  9483,  9558,  9775,  10227, 10406, 16084, 16170, 18419, 18552, 18600,
        18927, 19052, 19070, 19330, 19343, 19349, 19440, 19473, 19529, 19541, 19547, 19663,
        19846, 19856, 19863, 19914, 19918, 19973, 19989, 20166, 20175, 20179, 20196, 20215,
        20221, 20415, 20629, 20795, 20821, 20846, 20875, 20986, 21137, 21492, 21701, 21814,
        21921, 21960, 22185, 22209, 22242, 22249, 22314, 22374, 22495, 22746, 22747, 22888,
        22914, 23206, 23241, 23263, 23484, 23538, 23542, 23666, 23706, 23711, 24129, 24285,
        24289, 24366, 24717, 24990, 25633, 26960, 26995, 32065, 32789, 34279};
    std::vector<double> values;
    values.reserve(std::size(kms));
    for (int v : kms) values.push_back(v / 1000.0);
    return values;
  }();
  return data;
}

std::optional<std::vector<double>> bundled_dataset(std::string_view name) {
  if (name == "small10") return small10_data();
  if (name == "galaxy") return galaxy_data();
  return std::nullopt;
}

}  // namespace classify
