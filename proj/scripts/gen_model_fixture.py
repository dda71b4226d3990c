#!/usr/bin/env python3
"""Freezes a reference forward pass for the encoder tests.

Builds a tiny BertForMaskedLM (HuggingFace `transformers`) in float64 with
deterministic random weights, runs one padded sequence through it, and dumps
the weights (renamed and transposed to this repo's y = x*W + b convention),
the input, and the resulting logits to tests/fixtures/model_oracle.json.

Run from the repo root:

    python3 scripts/gen_model_fixture.py
"""
import json

import torch
from transformers import BertConfig, BertForMaskedLM

LAYERS = 2
HIDDEN = 16
HEADS = 2
FF = 32
MAX_LEN = 12
VOCAB = 40
SEED = 1234


def rename(hf_name):
    n = hf_name
    for prefix in ("bert.", "cls."):
        if n.startswith(prefix):
            n = n[len(prefix):]
    table = {
        "embeddings.word_embeddings.weight": "embeddings.token",
        "embeddings.position_embeddings.weight": "embeddings.position",
        "embeddings.token_type_embeddings.weight": "embeddings.segment",
        "embeddings.LayerNorm.weight": "embeddings.ln.scale",
        "embeddings.LayerNorm.bias": "embeddings.ln.shift",
        "predictions.transform.dense.weight": "mlm.transform.w",
        "predictions.transform.dense.bias": "mlm.transform.b",
        "predictions.transform.LayerNorm.weight": "mlm.ln.scale",
        "predictions.transform.LayerNorm.bias": "mlm.ln.shift",
        "predictions.bias": "mlm.output_bias",
    }
    if n in table:
        return table[n]
    if n.startswith("encoder.layer."):
        rest = n[len("encoder.layer."):]
        idx, rest = rest.split(".", 1)
        sub = {
            "attention.self.query.weight": "attn.wq",
            "attention.self.query.bias": "attn.bq",
            "attention.self.key.weight": "attn.wk",
            "attention.self.key.bias": "attn.bk",
            "attention.self.value.weight": "attn.wv",
            "attention.self.value.bias": "attn.bv",
            "attention.output.dense.weight": "attn.wo",
            "attention.output.dense.bias": "attn.bo",
            "attention.output.LayerNorm.weight": "attn.ln.scale",
            "attention.output.LayerNorm.bias": "attn.ln.shift",
            "intermediate.dense.weight": "ff.w1",
            "intermediate.dense.bias": "ff.b1",
            "output.dense.weight": "ff.w2",
            "output.dense.bias": "ff.b2",
            "output.LayerNorm.weight": "ff.ln.scale",
            "output.LayerNorm.bias": "ff.ln.shift",
        }
        if rest in sub:
            return "layer%s.%s" % (idx, sub[rest])
    return None  # tied decoder weight and other aliases


def main():
    torch.manual_seed(SEED)
    config = BertConfig(
        vocab_size=VOCAB,
        hidden_size=HIDDEN,
        num_hidden_layers=LAYERS,
        num_attention_heads=HEADS,
        intermediate_size=FF,
        hidden_act="gelu",
        hidden_dropout_prob=0.0,
        attention_probs_dropout_prob=0.0,
        max_position_embeddings=MAX_LEN,
        type_vocab_size=2,
        layer_norm_eps=1e-12,
        attn_implementation="eager",
    )
    model = BertForMaskedLM(config).double().eval()

    # HF default init is fine but tiny; spread the weights out so layer
    # outputs are O(1) and disagreements cannot hide below tolerance.
    gen = torch.Generator().manual_seed(SEED)
    with torch.no_grad():
        for name, p in model.named_parameters():
            if name.endswith("LayerNorm.weight"):
                p.copy_(1.0 + 0.2 * torch.randn(p.shape, generator=gen, dtype=torch.float64))
            elif name.endswith("bias") or name.endswith("LayerNorm.bias"):
                p.copy_(0.1 * torch.randn(p.shape, generator=gen, dtype=torch.float64))
            else:
                p.copy_(0.3 * torch.randn(p.shape, generator=gen, dtype=torch.float64))
        model.tie_weights()

    used = MAX_LEN - 3  # real tokens, then a padded tail
    ids = torch.randint(1, VOCAB, (1, MAX_LEN), generator=gen)
    ids[0, used:] = 0
    mask = torch.ones(1, MAX_LEN, dtype=torch.long)
    mask[0, used:] = 0

    with torch.no_grad():
        logits = model(input_ids=ids, attention_mask=mask).logits[0]

    tensors = {}
    for name, p in model.named_parameters():
        ours = rename(name)
        if ours is None:
            continue
        w = p.detach()
        if name.endswith("dense.weight") or ".self." in name and name.endswith("weight"):
            w = w.t()  # nn.Linear keeps (out, in); we keep (in, out)
        tensors[ours] = {"dims": list(w.shape), "values": w.reshape(-1).tolist()}

    fixture = {
        "config": {
            "layers": LAYERS,
            "hidden": HIDDEN,
            "heads": HEADS,
            "ff_dim": FF,
            "max_len": MAX_LEN,
            "vocab": VOCAB,
        },
        "input_ids": ids[0].tolist(),
        "attention_mask": mask[0].tolist(),
        "logits": {"dims": list(logits.shape), "values": logits.reshape(-1).tolist()},
        "tensors": tensors,
    }
    out = "tests/fixtures/model_oracle.json"
    with open(out, "w") as f:
        json.dump(fixture, f)
        f.write("\n")
    print("wrote %s: %d tensors, logits %s" % (out, len(tensors), list(logits.shape)))


if __name__ == "__main__":
    main()
