"""Regenerate the bundled caption desk corpus.

A toy scene grammar produces gold-tagged, MSCOCO-like captions. Every scene
(agent, action, object, place) gets five reference paraphrases; validation
scenes also get one imperfect "system" caption in which nouns, verbs or
places are sometimes wrong, so category bounds have room in both directions.

    python tools/make_desk_corpus.py src/blindcap/data
"""

import random
import sys
from pathlib import Path

AGENTS = {
    "man": ["man", "guy", "person"],
    "woman": ["woman", "lady", "person"],
    "boy": ["boy", "kid", "child"],
    "girl": ["girl", "kid", "child"],
    "dog": ["dog", "puppy"],
    "cat": ["cat", "kitten"],
}
HUMANS = ["man", "woman", "boy", "girl"]
ANIMALS = ["dog", "cat"]
HUMAN_ADJ = ["young", "little", "old", "small", "happy", "tall"]
ANIMAL_ADJ = ["brown", "white", "black", "small", "little", "big"]
OBJ_ADJ = ["large", "small", "red", "white", "black", "yellow", "blue", "green"]

# (gerund, 3rd person, particle or None, objects, agents)
ACTIONS = [
    ("riding", "rides", None, ["horse", "bike", "skateboard", "surfboard", "motorcycle", "elephant"], HUMANS),
    ("eating", "eats", None, ["pizza", "sandwich", "banana", "donut", "cake", "hot dog"], HUMANS + ["dog"]),
    ("holding", "holds", None, ["umbrella", "frisbee", "kite", "phone", "bat", "racket"], HUMANS),
    ("playing", "plays", "with", ["frisbee", "ball", "dog", "kite", "toy"], HUMANS + ANIMALS),
    ("sitting", "sits", "on", ["bench", "couch", "bed", "chair", "table"], HUMANS + ANIMALS),
    ("laying", "lays", "on", ["bed", "couch", "blanket", "towel"], HUMANS + ANIMALS),
    ("flying", "flies", None, ["kite"], HUMANS),
    ("throwing", "throws", None, ["frisbee", "ball"], HUMANS),
    ("chasing", "chases", None, ["ball", "frisbee", "bird", "cat"], ["dog"]),
    ("walking", "walks", None, ["dog", "bike", "horse"], HUMANS),
    ("looking", "looks", "at", ["phone", "book", "laptop", "television", "bird"], HUMANS + ANIMALS),
]
PLACES = {
    "park": "in", "field": "in", "beach": "on", "street": "on", "kitchen": "in",
    "room": "in", "yard": "in", "snow": "in", "grass": "on", "sidewalk": "on",
}


def article(word):
    return "an" if word[0] in "aeiou" else "a"


def noun(phrase):
    # multiword objects such as "hot dog" are tagged NN NN
    return [(w, "NN") for w in phrase.split()]


def np_(head, adj=None, det=None):
    first = adj or head.split()[0]
    out = [(det or article(first), "DT")]
    if adj:
        out.append((adj, "JJ"))
    return out + noun(head)


def verb_obj(scene, form):
    ving, vz, particle, _, _ = scene["action"]
    out = [(ving, "VBG") if form == "ing" else (vz, "VBZ")]
    if particle:
        out.append((particle, "IN"))
    return out + np_(scene["obj"], scene.get("obj_adj"))


def place(scene):
    return [(PLACES[scene["place"]], "IN"), ("the", "DT")] + noun(scene["place"])


def agent(scene, rng, adj=True):
    word = rng.choice(AGENTS[scene["agent"]])
    return np_(word, scene["agent_adj"] if adj and rng.random() < 0.5 else None)


def realize(scene, rng, template):
    a = agent(scene, rng)
    if template == 0:
        return a + verb_obj(scene, "ing") + place(scene)
    if template == 1:
        return a + [("is", "VBZ")] + verb_obj(scene, "ing")
    if template == 2:
        return a + verb_obj(scene, "z") + place(scene)
    if template == 3:
        return [("there", "EX"), ("is", "VBZ")] + a + verb_obj(scene, "ing")
    if template == 4:
        return a + [("that", "WDT"), ("is", "VBZ")] + verb_obj(scene, "ing") + place(scene)
    if template == 5:
        return a + verb_obj(scene, "ing")
    if template == 6:
        return a + place(scene) + verb_obj(scene, "ing")
    return a + [("is", "VBZ")] + verb_obj(scene, "ing") + place(scene)


def sample_scene(rng):
    action = rng.choice(ACTIONS)
    who = rng.choice(action[4])
    return {
        "action": action,
        "agent": who,
        "agent_adj": rng.choice(HUMAN_ADJ if who in HUMANS else ANIMAL_ADJ),
        "obj": rng.choice(action[3]),
        "obj_adj": rng.choice(OBJ_ADJ) if rng.random() < 0.3 else None,
        "place": rng.choice(sorted(PLACES)),
    }


def corrupt(scene, rng):
    s = dict(scene)
    if rng.random() < 0.3:
        s["obj"] = rng.choice(s["action"][3] + ["ball", "table", "phone"])
    if rng.random() < 0.15:
        same_kind = HUMANS if s["agent"] in HUMANS else ANIMALS
        s["agent"] = rng.choice([a for a in same_kind if a != s["agent"]])
    if rng.random() < 0.25:
        # a generic verb replaces the specific action
        s["action"] = rng.choice([
            ("standing", "stands", "next to", [], []),
            ("sitting", "sits", "with", [], []),
        ])
    if rng.random() < 0.25:
        s["place"] = rng.choice(sorted(PLACES))
    s["obj_adj"] = None
    return s


def fix_particle_tags(tokens):
    # "next to" comes out of the particle slot as one IN token
    out = []
    for w, t in tokens:
        if w == "next to":
            out += [("next", "JJ"), ("to", "TO")]
        else:
            out.append((w, t))
    return out


def build(seed, n_scenes, with_system):
    rng = random.Random(seed)
    images = []
    for k in range(n_scenes):
        scene = sample_scene(rng)
        templates = rng.sample(range(8), 5)
        refs = [fix_particle_tags(realize(scene, rng, t)) for t in templates]
        system = None
        if with_system:
            system = fix_particle_tags(realize(corrupt(scene, rng), rng, rng.choice([0, 1, 2, 5, 7])))
        images.append((str(seed * 10000 + k), refs, system))
    return images


def main(outdir):
    outdir = Path(outdir)
    train = build(1, 100, with_system=False)
    with open(outdir / "desk_train.conll", "w", encoding="utf-8", newline="\n") as f:
        blocks = []
        for _, refs, _ in train:
            for ref in refs:
                blocks.append("".join("%s\t%s\n" % wt for wt in ref))
        f.write("\n".join(blocks))
    val = build(2, 100, with_system=True)
    with open(outdir / "desk_val_refs.tsv", "w", encoding="utf-8", newline="\n") as f:
        for image_id, refs, _ in val:
            for ref in refs:
                f.write("%s\t%s\n" % (image_id, " ".join(w for w, _ in ref)))
    with open(outdir / "desk_val_system.tsv", "w", encoding="utf-8", newline="\n") as f:
        for image_id, _, system in val:
            f.write("%s\t%s\n" % (image_id, " ".join(w for w, _ in system)))


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "src/blindcap/data")
