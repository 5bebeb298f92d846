export interface Meta {
  latent_dim: number;
  image_width: number;
  image_height: number;
  label_dictionary: Record<string, number>;
  checkpoint_id: string;
}

export type CentroidMap = Record<string, number[]>;

/** A decoded frame together with the latent vector it was decoded from. */
export interface DecodedFrame {
  z: number[];
  png: Uint8Array;
  seq: number;
}

/** Slider range presets mirroring the boundary-probe magnitudes. */
export const RANGE_PRESETS = [3, 4, 5, 100] as const;
export type RangePreset = (typeof RANGE_PRESETS)[number];
