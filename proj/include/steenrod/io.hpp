#pragma once

// JSON documents for complexes, presheaves, morphisms, assemblies and
// reconstruction results. Parse failures throw MalformedInputError naming the
// source, and either line:column or the offending field path.
//
//   complex:   {"maximal_simplices": [[0,1,2], [2,3]]}
//   presheaf:  {"stalks": {"0,1": {"generators": {"0": 1, "1": ["a", "b"]},
//                                  "differential": {"1": [[row, col, value]]},
//                                  "restrictions": {"0": {"0": [[row, col, value]]}}}}}
//   morphism:  {"components": {"0,1": {"0": [[row, col, value]]}}}
//   map:       {"entries": [[row, col, value]]}
//
// Matrices are keyed by source degree. Simplices absent from "stalks" carry
// the zero complex, absent matrices are zero. Map entries use the global
// indices of the assembly bases (degree, then position).

#include <filesystem>
#include <memory>
#include <string>

#include <json.hpp>

#include "steenrod/assembly.hpp"
#include "steenrod/complex.hpp"
#include "steenrod/presheaf.hpp"
#include "steenrod/reconstruct.hpp"
#include "steenrod/squares.hpp"

namespace steenrod {

using Json = nlohmann::ordered_json;

/// Whole file contents; throws MalformedInputError when unreadable.
std::string read_text(const std::filesystem::path& path);

Json parse_json(const std::string& text, const std::string& source);

SimplicialComplex parse_complex(const std::string& text, const std::string& source = "<complex>");
SimplicialComplex load_complex(const std::filesystem::path& path);
Json complex_to_json(const SimplicialComplex& complex);

Presheaf parse_presheaf(std::shared_ptr<const SimplicialComplex> complex, const std::string& text,
                        const std::string& source = "<presheaf>");
Presheaf load_presheaf(std::shared_ptr<const SimplicialComplex> complex,
                       const std::filesystem::path& path);
Json presheaf_to_json(const Presheaf& presheaf);

PresheafMorphism parse_morphism(std::shared_ptr<const Presheaf> source,
                                std::shared_ptr<const Presheaf> target, const std::string& text,
                                const std::string& name = "<morphism>");
Json morphism_to_json(const PresheafMorphism& morphism);

/// A raw degree-0 map between assemblies.
ComoduleMorphism parse_assembly_map(std::shared_ptr<const AssemblyComplex> source,
                                    std::shared_ptr<const AssemblyComplex> target,
                                    const std::string& text, const std::string& name = "<map>");
Json assembly_map_to_json(const ComoduleMorphism& f);

/// Basis records and differential triplets in global indices.
Json assembly_to_json(const AssemblyComplex& assembly);
Json coaction_to_json(const AssemblyComplex& assembly, const CoactionValue& value);
Json witness_to_json(const ComoduleMorphism& f, const RejectionWitness& witness);

}  // namespace steenrod
