#include "nilmmeta/parse.hpp"
#include "typedb_internal.hpp"

namespace nilmmeta::detail {

namespace {

struct SeedDoc {
    const char* name;
    const char* yaml;
};

// The built-in common metadata. One document per appliance type, in the same
// form a library folder would hold. Frequencies use binary-exact values so
// sums are exactly 1.
const SeedDoc kSeedTypes[] = {
    {"appliance",
     R"(name: appliance
description: generic appliance, used when nothing more specific is known
)"},

    {"fridge",
     R"(name: fridge
description: refrigerator with a single cooled compartment
categories:
  traditional: cold
  size: large
  electrical:
  - compressor
  - single-phase induction motor
  google_shopping:
  - Home & Garden > Kitchen & Dining > Kitchen Appliances > Refrigerators
distributions:
  on_power:
  - distribution_of_data:
      bin_edges: [0, 50, 100, 200]
      frequencies: [0.25, 0.5, 0.25]
    source: analysis
    training_data: submetered fridges from several open datasets
)"},

    {"freezer",
     R"(name: freezer
parent: fridge
description: free-standing freezer
)"},

    {"fridge freezer",
     R"(name: fridge freezer
parent: fridge
description: >
  combined fridge and freezer cabinet; one compressor serves both
  compartments, so it is modeled as a single appliance without fridge or
  freezer components
)"},

    {"wine cooler",
     R"(name: wine cooler
parent: fridge
description: temperature-controlled wine storage cabinet
)"},

    {"washing machine",
     R"(name: washing machine
description: front- or top-loading clothes washer
categories:
  traditional: wet
  size: large
  electrical:
  - single-phase induction motor
  google_shopping:
  - Home & Garden > Household Appliances > Laundry Appliances > Washing Machines
components:
- type: motor
- type: heating element
distributions:
  on_duration:
  - distribution_of_data:
      bin_edges: [0, 1800, 3600, 7200]
      frequencies: [0.25, 0.5, 0.25]
    source: subjective
)"},

    {"motor",
     R"(name: motor
description: electric motor observed as a component of larger appliances
categories:
  size: small
  electrical:
  - single-phase induction motor
)"},

    {"heating element",
     R"(name: heating element
description: resistive heating component
categories:
  traditional: heating
  size: small
  electrical:
  - resistive heater
)"},

    {"cooker",
     R"(name: cooker
description: kitchen cooking appliance
subtypes:
- electric
- gas
- dual fuel
categories:
  traditional: cooking
  size: large
  electrical:
  - resistive heater
)"},

    {"radio",
     R"(name: radio
description: broadcast receiver
subtypes:
- analogue
- digital
categories:
  traditional: consumer electronics
  size: small
  electrical:
  - linear power supply
distributions:
  rooms:
  - distribution_of_data:
      categories: [lounge, kitchen, bedroom]
      frequencies: [0.5, 0.25, 0.25]
    source: subjective
)"},

    {"television",
     R"(name: television
description: television set
categories:
  traditional: consumer electronics
  size: large
  electrical:
  - SMPS
additional_properties:
  screen_size:
    type: number
    minimum: 0
    description: diagonal screen size in inches
  display_technology:
    type: string
    enum: [LCD, LED, OLED, plasma, CRT]
distributions:
  on_power:
  - model:
      distribution_name: normal
      parameters: {mu: 120, sigma: 40}
    source: analysis
    training_data: plug-level measurements of flat-panel sets
)"},

    {"light",
     R"(name: light
description: fixed or portable lighting point
subtypes:
- ceiling
- floor
- table
- wall
categories:
  traditional: lighting
  size: small
components:
- type: LED lamp
- type: dimmer
distributions:
  on_power:
  - distribution_of_data:
      bin_edges: [0, 20, 60, 120]
      frequencies: [0.5, 0.375, 0.125]
    source: subjective
)"},

    {"lamp",
     R"(name: lamp
description: replaceable light source
categories:
  traditional: lighting
  size: small
)"},

    {"LED lamp",
     R"(name: LED lamp
parent: lamp
description: lamp built around light-emitting diodes
categories:
  electrical:
  - LED source
)"},

    {"incandescent lamp",
     R"(name: incandescent lamp
parent: lamp
description: filament lamp
categories:
  electrical:
  - incandescent filament
)"},

    {"fluorescent lamp",
     R"(name: fluorescent lamp
parent: lamp
description: tube or compact fluorescent lamp
categories:
  electrical:
  - fluorescent ballast
)"},

    {"dimmer",
     R"(name: dimmer
description: phase-cutting light dimmer
categories:
  traditional: lighting
  size: small
  electrical:
  - phase-angle dimmer
)"},

    {"computer",
     R"(name: computer
description: desktop or laptop computer
categories:
  traditional: ICT
  size: small
  electrical:
  - SMPS
)"},

    {"computer monitor",
     R"(name: computer monitor
description: stand-alone computer display
categories:
  traditional: ICT
  size: small
  electrical:
  - SMPS
additional_properties:
  screen_size:
    type: number
    minimum: 0
)"},
};

}  // namespace

std::vector<RawTypeDoc> seed_type_docs(std::vector<Diagnostic>& diags) {
    std::vector<RawTypeDoc> out;
    for (const auto& seed : kSeedTypes) {
        ParseResult parsed =
            parse_document(seed.yaml, std::string("<seed>/") + seed.name + ".yaml");
        extend(diags, parsed.diagnostics);
        out.push_back({seed.name, std::move(parsed.root)});
    }
    return out;
}

std::vector<std::string> seed_room_vocab() {
    return {"kitchen", "lounge", "bedroom", "bathroom",
            "hall",    "utility", "study",  "garage"};
}

std::map<std::string, std::vector<std::string>> seed_taxonomy_vocab() {
    return {
        {"traditional",
         {"wet", "cold", "consumer electronics", "ICT", "cooking", "lighting", "heating"}},
        {"size", {"large", "small"}},
        {"electrical",
         {"compressor", "single-phase induction motor", "resistive heater", "SMPS",
          "linear power supply", "LED source", "incandescent filament",
          "fluorescent ballast", "phase-angle dimmer"}},
        {"google_shopping",
         {"Home & Garden > Kitchen & Dining > Kitchen Appliances > Refrigerators",
          "Home & Garden > Household Appliances > Laundry Appliances > Washing Machines"}},
    };
}

}  // namespace nilmmeta::detail
