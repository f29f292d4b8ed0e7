/** Wire types for the steering service API. */

export interface Substitution {
  start_token: number;
  end_token: number;
  msa_form: string;
  dialect_form: string;
  rule_id: string;
}

export interface SteerRequest {
  text: string;
  region: string;
  context: string;
  register: string;
}

export interface SteerResponse {
  output: string;
  substitutions: Substitution[];
  authenticity: number;
  tagged_form: string;
}

export interface RegionsInventory {
  regions: string[];
  contexts: string[];
  registers: string[];
  region_aliases: Record<string, string>;
  context_aliases: Record<string, string>;
}
