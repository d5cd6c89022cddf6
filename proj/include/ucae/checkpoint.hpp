#pragma once

#include <map>
#include <string>

#include "ucae/domain_model.hpp"
#include "ucae/sem_world.hpp"
#include "ucae/training.hpp"

namespace ucae {

// Text checkpoint format, one file per object:
//   UCAE-CKPT v1 <kind>
//   meta <key> <value...>
//   tensor <name> <rows> <cols>
//   <rows*cols hexadecimal float literals, whitespace separated>
// Hex floats make the round trip bit-exact; kinds are domain_model, sem_spec
// and sample_bank.

using MetaMap = std::map<std::string, std::string>;

std::string checkpoint_kind(const std::string& path);
MetaMap read_checkpoint_meta(const std::string& path);

void save_checkpoint(const DomainModel& model, const std::string& path,
                     const MetaMap& extra_meta = {});
DomainModel load_domain_model(const std::string& path);

void save_checkpoint(const SemSpec& spec, const std::string& path,
                     const MetaMap& extra_meta = {});
SemSpec load_sem_spec(const std::string& path);

void save_checkpoint(const SampleBank& bank, const std::string& path,
                     const MetaMap& extra_meta = {});
SampleBank load_sample_bank(const std::string& path);

}  // namespace ucae
