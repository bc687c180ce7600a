// Usage: node validate_gltf.js <validator-module-dir> <file.gltf>
// Prints the issue summary; exits 0 only when the validator reports no errors.
const fs = require('fs');
const path = require('path');

const validator = require(process.argv[2]);
const file = process.argv[3];
const dir = path.dirname(file);

validator
  .validateBytes(new Uint8Array(fs.readFileSync(file)), {
    uri: path.basename(file),
    externalResourceFunction: (uri) =>
      new Promise((resolve, reject) => {
        fs.readFile(path.join(dir, decodeURIComponent(uri)), (err, data) =>
          err ? reject(err.toString()) : resolve(new Uint8Array(data)));
      }),
  })
  .then((report) => {
    const i = report.issues;
    console.log(`errors=${i.numErrors} warnings=${i.numWarnings} infos=${i.numInfos} hints=${i.numHints}`);
    for (const m of i.messages.filter((m) => m.severity <= 1)) {
      console.log(`  ${m.code} ${m.pointer || ''} ${m.message}`);
    }
    process.exit(i.numErrors === 0 ? 0 : 1);
  })
  .catch((err) => {
    console.log(`validator failure: ${err}`);
    process.exit(2);
  });
