// Copyright 2026 The iacloop Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <stdexcept>

#include "iacloop/schema_store.hpp"

namespace iacloop::schema {

namespace {

// Property subsets of the AWS resource-provider schemas. Keep in sync with
// tests/unit/schema_store_test.cpp, which pins them.

constexpr std::string_view kEc2Instance = R"json({
  "typeName": "AWS::EC2::Instance",
  "properties": {
    "ImageId": {"type": "string"},
    "InstanceType": {"type": "string"},
    "KeyName": {"type": "string"},
    "SubnetId": {"type": "string"},
    "AvailabilityZone": {"type": "string"},
    "SecurityGroupIds": {"type": "array", "items": {"type": "string"}},
    "SecurityGroups": {"type": "array", "items": {"type": "string"}},
    "Monitoring": {"type": "boolean"},
    "DisableApiTermination": {"type": "boolean"},
    "EbsOptimized": {"type": "boolean"},
    "Ipv6AddressCount": {"type": "integer"},
    "Tenancy": {"type": "string", "enum": ["default", "dedicated", "host"]},
    "UserData": {"type": "string"},
    "Tags": {"type": "array", "items": {"type": "object"}}
  },
  "required": ["ImageId"]
})json";

constexpr std::string_view kEc2InternetGateway = R"json({
  "typeName": "AWS::EC2::InternetGateway",
  "properties": {
    "Tags": {"type": "array", "items": {"type": "object"}}
  },
  "required": []
})json";

constexpr std::string_view kEc2RouteTable = R"json({
  "typeName": "AWS::EC2::RouteTable",
  "properties": {
    "VpcId": {"type": "string"},
    "Tags": {"type": "array", "items": {"type": "object"}}
  },
  "required": ["VpcId"]
})json";

constexpr std::string_view kEc2SecurityGroup = R"json({
  "typeName": "AWS::EC2::SecurityGroup",
  "properties": {
    "GroupDescription": {"type": "string"},
    "GroupName": {"type": "string"},
    "VpcId": {"type": "string"},
    "SecurityGroupIngress": {"type": "array", "items": {"type": "object"}},
    "SecurityGroupEgress": {"type": "array", "items": {"type": "object"}},
    "Tags": {"type": "array", "items": {"type": "object"}}
  },
  "required": ["GroupDescription"]
})json";

constexpr std::string_view kEc2Subnet = R"json({
  "typeName": "AWS::EC2::Subnet",
  "properties": {
    "VpcId": {"type": "string"},
    "CidrBlock": {"type": "string"},
    "AvailabilityZone": {"type": "string"},
    "MapPublicIpOnLaunch": {"type": "boolean"},
    "AssignIpv6AddressOnCreation": {"type": "boolean"},
    "Tags": {"type": "array", "items": {"type": "object"}}
  },
  "required": ["VpcId"]
})json";

constexpr std::string_view kEc2Vpc = R"json({
  "typeName": "AWS::EC2::VPC",
  "properties": {
    "CidrBlock": {"type": "string"},
    "EnableDnsSupport": {"type": "boolean"},
    "EnableDnsHostnames": {"type": "boolean"},
    "InstanceTenancy": {"type": "string", "enum": ["default", "dedicated", "host"]},
    "Tags": {"type": "array", "items": {"type": "object"}}
  },
  "required": ["CidrBlock"]
})json";

constexpr std::string_view kEc2VpcEndpoint = R"json({
  "typeName": "AWS::EC2::VPCEndpoint",
  "properties": {
    "ServiceName": {"type": "string"},
    "VpcId": {"type": "string"},
    "VpcEndpointType": {"type": "string", "enum": ["Interface", "Gateway", "GatewayLoadBalancer"]},
    "SubnetIds": {"type": "array", "items": {"type": "string"}},
    "SecurityGroupIds": {"type": "array", "items": {"type": "string"}},
    "RouteTableIds": {"type": "array", "items": {"type": "string"}},
    "PrivateDnsEnabled": {"type": "boolean"},
    "PolicyDocument": {"type": "object"}
  },
  "required": ["ServiceName", "VpcId"]
})json";

constexpr std::string_view kS3Bucket = R"json({
  "typeName": "AWS::S3::Bucket",
  "properties": {
    "BucketName": {"type": "string"},
    "AccessControl": {"type": "string", "enum": ["AuthenticatedRead", "AwsExecRead", "BucketOwnerFullControl", "BucketOwnerRead", "LogDeliveryWrite", "Private", "PublicRead", "PublicReadWrite"]},
    "ObjectLockEnabled": {"type": "boolean"},
    "VersioningConfiguration": {"type": "object"},
    "BucketEncryption": {"type": "object"},
    "PublicAccessBlockConfiguration": {"type": "object"},
    "Tags": {"type": "array", "items": {"type": "object"}}
  },
  "required": []
})json";

}  // namespace

const std::vector<std::string_view>& builtin_schema_documents() {
  static const std::vector<std::string_view> kDocs = {
      kEc2Instance, kEc2InternetGateway, kEc2RouteTable, kEc2SecurityGroup,
      kEc2Subnet,   kEc2Vpc,             kEc2VpcEndpoint, kS3Bucket,
  };
  return kDocs;
}

const SchemaStore& builtin_core_schemas() {
  static const SchemaStore kStore = [] {
    SchemaStore store;
    for (std::string_view doc : builtin_schema_documents()) {
      if (!store.add(parse_schema_document(doc))) {
        throw std::logic_error("duplicate builtin schema");
      }
    }
    return store;
  }();
  return kStore;
}

}  // namespace iacloop::schema
