#!/usr/bin/env python3
"""Regenerate data/wordnet-3.1/noun.exc.

The upstream redistribution of the WordNet 3.1 database files that we vendor
(npm package ``wordnet-db``) ships the data/index files but omits the
morphological exception lists (``*.exc``).  This script rebuilds a noun
exception file from a curated table of English irregular plurals.  It is a
reconstruction, not the Princeton original: it covers the irregular forms the
suffix-detachment rules cannot reach (-ves words, Latin/Greek plurals,
suppletives, pluralia like "oxen", and hyphen/underscore compounds).

Every emitted line has the format ``inflected base [base ...]`` and is kept
only if at least one base form resolves in index.noun, so the file never maps
to words the lexicon cannot answer for.

Usage: python scripts/build_noun_exc.py [--dict-dir data/wordnet-3.1]
"""

from __future__ import annotations

import argparse
import gzip
from pathlib import Path

# inflected form -> candidate base forms, first match in the lexicon wins
IRREGULAR_PLURALS = """
addenda addendum
adieux adieu
aides-de-camp aide-de-camp
algae alga
alumnae alumna
alumni alumnus
amoebae amoeba
analyses analysis
antennae antenna
antitheses antithesis
aphides aphid
apices apex
appendices appendix
aquaria aquarium
arboreta arboretum
atria atrium
attorneys_general attorney_general
automata automaton
axes ax axe axis
bacilli bacillus
bacteria bacterium
bases base basis
beaux beau
bijoux bijou
brethren brother
bronchi bronchus
buffaloes buffalo
bureaux bureau
cacti cactus
calculi calculus
calves calf
candelabra candelabrum
cargoes cargo
cervices cervix
chateaux chateau
cherubim cherub
children child
compendia compendium
concerti concerto
consortia consortium
corpora corpus
corrigenda corrigendum
cortices cortex
courts-martial court-martial
crania cranium
crescendi crescendo
crises crisis
criteria criterion
curricula curriculum
data datum
desiderata desideratum
diagnoses diagnosis
dicta dictum
dice die dice
dominoes domino
dwarves dwarf
echoes echo
effluvia effluvium
elves elf
embargoes embargo
emphases emphasis
emporia emporium
epiglottides epiglottis
errata erratum
fathers-in-law father-in-law
feet foot
flambeaux flambeau
foci focus
formulae formula
fungi fungus
ganglia ganglion
geese goose
genera genus
genii genie genius
glissandi glissando
graffiti graffito
grottoes grotto
gymnasia gymnasium
haloes halo
halves half
helices helix
heroes hero
hippopotami hippopotamus
honoraria honorarium
hooves hoof
hypotheses hypothesis
indices index
interregna interregnum
kibbutzim kibbutz
kine cow
knives knife
lacunae lacuna
larvae larva
leaves leaf
lice louse
libretti libretto
lives life
loaves loaf
loci locus
lustra lustrum
matrices matrix
maxima maximum
media medium
memoranda memorandum
mesdames madame madam
metatheses metathesis
mice mouse
milieux milieu
millennia millennium
minima minimum
minutiae minutia
mitochondria mitochondrion
momenta momentum
moratoria moratorium
mosquitoes mosquito
mothers-in-law mother-in-law
mottoes motto
narcissi narcissus
nebulae nebula
neuroses neurosis
noes no
nuclei nucleus
oases oasis
obeli obelus
octopi octopus
optima optimum
ova ovum
oxen ox
paparazzi paparazzo
paralyses paralysis
parentheses parenthesis
passers-by passer-by
pence penny
phenomena phenomenon
phyla phylum
plateaux plateau
podia podium
potatoes potato
prognoses prognosis
prostheses prosthesis
protozoa protozoan protozoon
psychoses psychosis
quanta quantum
radii radius
referenda referendum
rostra rostrum
runners-up runner-up
sanatoria sanatorium
scarves scarf
schemata schema
scrota scrotum
selves self
sera serum
seraphim seraph
sheaves sheaf
shelves shelf
simulacra simulacrum
sisters-in-law sister-in-law
solaria solarium
sons-in-law son-in-law
spectra spectrum
stadia stadium
staves staff stave
stigmata stigma
stimuli stimulus
stomata stoma
strata stratum
stretti stretto
syllabi syllabus
symposia symposium
synopses synopsis
syntheses synthesis
tableaux tableau
taxa taxon
teeth tooth
tempi tempo
termini terminus
testes testis
theses thesis
thieves thief
thrombi thrombus
tomatoes tomato
tori torus
torpedoes torpedo
trousseaux trousseau
turves turf
ultimata ultimatum
uteri uterus
vertebrae vertebra
vertices vertex
vetoes veto
virtuosi virtuoso
vitae vita
volcanoes volcano
vortices vortex
wharves wharf
wives wife
wolves wolf
"""


def load_index_words(dict_dir: Path) -> set[str]:
    path = dict_dir / "index.noun"
    opener = open
    if not path.exists():
        path = dict_dir / "index.noun.gz"
        opener = gzip.open
    words = set()
    with opener(path, "rt", encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("  "):
                continue
            words.add(line.split(" ", 1)[0])
    return words


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dict-dir", type=Path, default=Path("data/wordnet-3.1"))
    args = ap.parse_args()

    lexicon = load_index_words(args.dict_dir)
    kept, dropped = [], []
    for raw in IRREGULAR_PLURALS.strip().splitlines():
        fields = raw.split()
        inflected, bases = fields[0], fields[1:]
        bases = [b for b in bases if b in lexicon]
        if bases:
            kept.append(" ".join([inflected] + bases))
        else:
            dropped.append(raw)

    kept.sort()
    out = args.dict_dir / "noun.exc.gz"
    with gzip.GzipFile(filename="", mode="wb", fileobj=open(out, "wb"), mtime=0) as fh:
        fh.write(("\n".join(kept) + "\n").encode("utf-8"))
    print(f"wrote {out} with {len(kept)} entries")
    if dropped:
        print(f"dropped {len(dropped)} entries with no base in the lexicon:")
        for d in dropped:
            print("  ", d)


if __name__ == "__main__":
    main()
