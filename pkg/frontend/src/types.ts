/**
 * Map payload contract.
 *
 * The payload produced by the analysis pipeline is the single source of
 * truth: the viewer never re-clusters or re-ordinates, and the document
 * positions in the payload are the authoritative final positions (the
 * settling animation only eases toward them).
 */

import { z } from 'zod';

const areaSchema = z.object({
  index: z.number().int(),
  label: z.string(),
  centroid: z.tuple([z.number(), z.number()]),
  radius: z.number().positive(),
  readers: z.number().int().nonnegative(),
  share: z.number().min(0).max(1),
});

const documentSchema = z.object({
  doc_id: z.string().min(1),
  area: z.number().int(),
  x: z.number(),
  y: z.number(),
  radius: z.number().positive(),
  title: z.string(),
  year: z.number().int().nullable(),
  journal: z.string().nullable(),
  pub_type: z.string(),
  readers: z.number().int().nonnegative(),
});

const provenanceSchema = z.object({
  threshold: z.number().int(),
  k: z.number().int(),
  stress: z.number(),
  r_squared: z.number(),
  seed: z.number().int(),
  timestamps: z.record(z.unknown()),
});

const payloadSchema = z.object({
  areas: z.array(areaSchema).min(1),
  documents: z.array(documentSchema).min(1),
  provenance: provenanceSchema,
});

export type AreaPayload = z.infer<typeof areaSchema>;
export type DocumentPayload = z.infer<typeof documentSchema>;
export type ProvenancePayload = z.infer<typeof provenanceSchema>;
export type MapPayload = z.infer<typeof payloadSchema>;

/** Raised on schema violations; `field` names the offending payload path. */
export class PayloadError extends Error {
  readonly field: string;

  constructor(field: string, message: string) {
    super(`payload field ${field}: ${message}`);
    this.name = 'PayloadError';
    this.field = field;
  }
}

/**
 * Validate raw JSON into a typed payload.
 *
 * Beyond the field schema this enforces the cross-references the renderer
 * relies on: every document's area exists, and no area is empty.
 */
export function parseMapPayload(data: unknown): MapPayload {
  const result = payloadSchema.safeParse(data);
  if (!result.success) {
    const issue = result.error.issues[0];
    const field = issue.path.length > 0 ? issue.path.join('.') : '(root)';
    throw new PayloadError(field, issue.message);
  }
  const payload = result.data;
  const areaIndices = new Set(payload.areas.map((a) => a.index));
  if (areaIndices.size !== payload.areas.length) {
    throw new PayloadError('areas.index', 'area indices must be unique');
  }
  const populated = new Set<number>();
  for (const [i, doc] of payload.documents.entries()) {
    if (!areaIndices.has(doc.area)) {
      throw new PayloadError(`documents.${i}.area`, `unknown area ${doc.area}`);
    }
    populated.add(doc.area);
  }
  for (const area of payload.areas) {
    if (!populated.has(area.index)) {
      throw new PayloadError('areas', `area ${area.index} has no documents`);
    }
  }
  return payload;
}
